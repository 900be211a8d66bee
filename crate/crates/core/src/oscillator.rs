//! Harmonic oscillator `H = x̂² + p̂²` on a finite-difference grid, its
//! factorization through ladder operators, and the uncertainty identity for
//! the quantized Gaussian.
//!
//! Two momentum conventions are supported. With `p̂ = −i·d/dx` the
//! normal-ordered Hamiltonian `2ẑ̄ẑ + h = x² − d²/dx² + (h − 1)` has levels
//! `2j + h`; with `p̂ = −ih·d/dx` it equals `x² − h²d²/dx²` and has levels
//! `h(2j + 1)`. The two agree at `h = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gaussian::gaussian_moment;
use crate::quadrature::{integrate, QuadratureRule1D};
use crate::tridiag::SymTridiagonal;
use crate::{Error, Result};

pub const MAX_LEVELS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumConvention {
    /// `p̂ = −i·d/dx`, `H = 2ẑ̄ẑ + h`, levels `2j + h`.
    #[default]
    Unit,
    /// `p̂ = −ih·d/dx`, `H = x² + p̂²`, levels `h(2j + 1)`.
    Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub dim: usize,
    pub h: f64,
    pub convention: MomentumConvention,
}

impl OscillatorSpec {
    pub fn new(dim: usize, h: f64) -> Result<Self> {
        Self::with_convention(dim, h, MomentumConvention::default())
    }

    pub fn with_convention(dim: usize, h: f64, convention: MomentumConvention) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::param("h", format!("must be positive and finite, got {h}")));
        }
        Ok(Self { dim, h, convention })
    }

    /// Scale `c` in `p̂ = −ic·d/dx`.
    fn momentum_scale(&self) -> f64 {
        match self.convention {
            MomentumConvention::Unit => 1.0,
            MomentumConvention::Scaled => self.h,
        }
    }

    /// Constant added to `x² + p̂²`.
    fn energy_shift(&self) -> f64 {
        match self.convention {
            MomentumConvention::Unit => self.h - 1.0,
            MomentumConvention::Scaled => 0.0,
        }
    }

    /// Exact 1-D level `j`.
    pub fn exact_level(&self, j: usize) -> f64 {
        match self.convention {
            MomentumConvention::Unit => 2.0 * j as f64 + self.h,
            MomentumConvention::Scaled => self.h * (2.0 * j as f64 + 1.0),
        }
    }

    fn check_one_dim(&self) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::param("dim", format!("grid operators are one-dimensional, got n = {}", self.dim)));
        }
        Ok(())
    }
}

/// Uniform grid of `points` interior nodes on `(−L, L)` with Dirichlet
/// boundaries at `±L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl GridSpec {
    pub const MIN_SPECTRAL_HALF_WIDTH: f64 = 6.0;
    pub const MIN_SPECTRAL_POINTS: usize = 500;

    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::param("half_width", format!("must be positive, got {half_width}")));
        }
        if points < 3 {
            return Err(Error::param("points", format!("need at least 3, got {points}")));
        }
        Ok(Self { half_width, points })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points + 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.spacing();
        (1..=self.points).map(|k| -self.half_width + k as f64 * dx).collect()
    }

    /// The grid with half the spacing on the same interval.
    pub fn refined(&self) -> Self {
        Self { half_width: self.half_width, points: 2 * self.points + 1 }
    }

    pub fn is_spectral_grade(&self) -> bool {
        self.half_width >= Self::MIN_SPECTRAL_HALF_WIDTH && self.points >= Self::MIN_SPECTRAL_POINTS
    }

    fn norm(&self, v: &[Complex64]) -> f64 {
        (v.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.spacing()).sqrt()
    }

    fn sample(&self, f: &dyn Fn(f64) -> f64) -> Vec<Complex64> {
        self.nodes().into_iter().map(|x| Complex64::new(f(x), 0.0)).collect()
    }

    fn sample_nonzero(&self, f: &dyn Fn(f64) -> f64) -> Result<(Vec<Complex64>, f64)> {
        let psi = self.sample(f);
        let norm = self.norm(&psi);
        if norm.is_nan() || norm <= 1e-150 {
            return Err(Error::ZeroNorm(norm));
        }
        Ok((psi, norm))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Set when the grid is too coarse for the levels to be trusted.
    pub warning: Option<String>,
}

fn hamiltonian_matrix(spec: &OscillatorSpec, grid: &GridSpec) -> Result<SymTridiagonal> {
    let dx = grid.spacing();
    let c = spec.momentum_scale();
    let kin = c * c / (dx * dx);
    let shift = spec.energy_shift();
    let diag = grid.nodes().iter().map(|x| 2.0 * kin + x * x + shift).collect();
    SymTridiagonal::new(diag, vec![-kin; grid.points - 1])
}

/// Lowest `levels` eigenvalues of the oscillator, ascending.
///
/// For `dim > 1` the one-dimensional levels are combined by additivity.
pub fn spectrum(spec: &OscillatorSpec, grid: &GridSpec, levels: usize) -> Result<Spectrum> {
    if !(1..=MAX_LEVELS).contains(&levels) {
        return Err(Error::param("levels", format!("must lie in 1..={MAX_LEVELS}, got {levels}")));
    }
    if levels > grid.points {
        return Err(Error::param("levels", "more levels than grid points"));
    }
    let one_dim = hamiltonian_matrix(spec, grid)?.smallest(levels)?;
    let eigenvalues = if spec.dim == 1 { one_dim } else { combine_levels(&one_dim, spec.dim, levels) };
    if eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(Error::NonFinite("eigenvalue".into()));
    }
    let warning = (!grid.is_spectral_grade()).then(|| {
        format!(
            "grid (L = {}, N = {}) is below L ≥ {}, N ≥ {}; levels are not converged",
            grid.half_width,
            grid.points,
            GridSpec::MIN_SPECTRAL_HALF_WIDTH,
            GridSpec::MIN_SPECTRAL_POINTS
        )
    });
    Ok(Spectrum { eigenvalues, warning })
}

/// Lowest `levels` values of `e_{j_1} + … + e_{j_dim}` counted with multiplicity.
fn combine_levels(one_dim: &[f64], dim: usize, levels: usize) -> Vec<f64> {
    let mut sums = vec![0.0];
    for _ in 0..dim {
        let mut next: Vec<f64> = sums.iter().flat_map(|s| one_dim.iter().map(move |e| s + e)).collect();
        next.sort_by(f64::total_cmp);
        next.truncate(levels);
        sums = next;
    }
    sums
}

/// `Hψ` with the three-point Laplacian.
fn apply_hamiltonian(spec: &OscillatorSpec, grid: &GridSpec, psi: &[Complex64]) -> Vec<Complex64> {
    let dx = grid.spacing();
    let c = spec.momentum_scale();
    let kin = c * c / (dx * dx);
    let shift = spec.energy_shift();
    let zero = Complex64::new(0.0, 0.0);
    grid.nodes()
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let left = if k > 0 { psi[k - 1] } else { zero };
            let right = psi.get(k + 1).copied().unwrap_or(zero);
            (psi[k] * 2.0 - left - right) * kin + psi[k] * (x * x + shift)
        })
        .collect()
}

/// `x̂ψ`.
fn position(grid: &GridSpec, psi: &[Complex64]) -> Vec<Complex64> {
    grid.nodes().iter().zip(psi).map(|(x, v)| v * x).collect()
}

/// `p̂ψ = −ic·Dψ` with the central first difference `D`.
fn momentum(grid: &GridSpec, c: f64, psi: &[Complex64]) -> Vec<Complex64> {
    let dx = grid.spacing();
    let zero = Complex64::new(0.0, 0.0);
    let factor = Complex64::new(0.0, -c / (2.0 * dx));
    (0..psi.len())
        .map(|k| {
            let left = if k > 0 { psi[k - 1] } else { zero };
            let right = psi.get(k + 1).copied().unwrap_or(zero);
            (right - left) * factor
        })
        .collect()
}

fn combine(a: &[Complex64], b: &[Complex64], sa: Complex64, sb: Complex64) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x * sa + y * sb).collect()
}

/// `‖Hψ − Eψ‖₂/‖ψ‖₂` on the grid (one dimension).
pub fn eigen_residual(spec: &OscillatorSpec, grid: &GridSpec, state: &dyn Fn(f64) -> f64, energy: f64) -> Result<f64> {
    spec.check_one_dim()?;
    let (psi, norm) = grid.sample_nonzero(state)?;
    let h_psi = apply_hamiltonian(spec, grid, &psi);
    let diff: Vec<Complex64> = h_psi.iter().zip(&psi).map(|(a, b)| a - b * energy).collect();
    Ok(grid.norm(&diff) / norm)
}

/// Eigen-residual of `ψ₀ = e^{−x²/2}` at `E₀ = h`. Under the scaled
/// convention `ψ₀` is the ground state only for `h = 1`.
pub fn ground_state_residual(spec: &OscillatorSpec, grid: &GridSpec) -> Result<f64> {
    if spec.convention == MomentumConvention::Scaled && spec.h != 1.0 {
        return Err(Error::param("h", "e^{-x²/2} is the ground state of x² + p² only for h = 1"));
    }
    eigen_residual(spec, grid, &|x| (-0.5 * x * x).exp(), spec.exact_level(0))
}

/// `max_ψ ‖Hψ − (2ẑ̄(ẑψ) + hψ)‖₂/‖ψ‖₂` with `ẑ = (x̂ + ip̂)/√2` and
/// `ẑ̄ = (x̂ − ip̂)/√2` applied by central differences.
pub fn ladder_identity_residual(spec: &OscillatorSpec, states: &[&dyn Fn(f64) -> f64], grid: &GridSpec) -> Result<f64> {
    spec.check_one_dim()?;
    let c = spec.momentum_scale();
    let i = Complex64::new(0.0, 1.0);
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for state in states {
        let (psi, norm) = grid.sample_nonzero(*state)?;
        let lower = combine(&position(grid, &psi), &momentum(grid, c, &psi), s, i * s);
        let raised = combine(&position(grid, &lower), &momentum(grid, c, &lower), s, -i * s);
        let factored = combine(&raised, &psi, one * 2.0, one * spec.h);
        let h_psi = apply_hamiltonian(spec, grid, &psi);
        let diff: Vec<Complex64> = h_psi.iter().zip(&factored).map(|(a, b)| a - b).collect();
        worst = worst.max(grid.norm(&diff) / norm);
    }
    Ok(worst)
}

/// Smooth states used by [`commutator_residual`].
pub fn commutator_test_states() -> Vec<Box<dyn Fn(f64) -> f64>> {
    vec![
        Box::new(|x: f64| (-0.5 * x * x).exp()),
        Box::new(|x: f64| x * (-0.5 * x * x).exp()),
        Box::new(|x: f64| (1.0 + 0.5 * x * x) * (-0.25 * x * x).exp()),
        Box::new(|x: f64| (-(x - 1.0).powi(2)).exp()),
    ]
}

/// `max_ψ ‖(x̂p̂ − p̂x̂)ψ − ihψ‖₂/‖ψ‖₂` with `p̂ = −ih·d/dx`.
pub fn commutator_residual(grid: &GridSpec, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::param("h", format!("must be positive and finite, got {h}")));
    }
    let ih = Complex64::new(0.0, h);
    let mut worst: f64 = 0.0;
    for state in commutator_test_states() {
        let (psi, norm) = grid.sample_nonzero(&*state)?;
        let xp = position(grid, &momentum(grid, h, &psi));
        let px = momentum(grid, h, &position(grid, &psi));
        let diff: Vec<Complex64> = xp.iter().zip(&px).zip(&psi).map(|((a, b), v)| a - b - v * ih).collect();
        worst = worst.max(grid.norm(&diff) / norm);
    }
    Ok(worst)
}

/// `([x̂, x̂], [p̂, p̂])` residual norms over the same test states.
pub fn self_commutator_residuals(grid: &GridSpec, h: f64) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, 0.0f64);
    for state in commutator_test_states() {
        let (psi, norm) = grid.sample_nonzero(&*state)?;
        let xx = position(grid, &position(grid, &psi));
        let pp = momentum(grid, h, &momentum(grid, h, &psi));
        let zero_x: Vec<Complex64> = xx.iter().zip(&xx).map(|(a, b)| a - b).collect();
        let zero_p: Vec<Complex64> = pp.iter().zip(&pp).map(|(a, b)| a - b).collect();
        worst.0 = worst.0.max(grid.norm(&zero_x) / norm);
        worst.1 = worst.1.max(grid.norm(&zero_p) / norm);
    }
    Ok(worst)
}

/// Second moments of `ψ_λ = K·e^{−λx²/(2(1+λ))}` (quantum parameter 1, one
/// dimension) and both sides of `σ²(x)σ²(p) = ¼(−i[x,p]ψ, ψ)²`.
///
/// `var_x` and `var_p` are taken against the unnormalized density `ψ²`;
/// the normalized variances divide by `‖ψ‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub lambda: f64,
    pub amplitude: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub norm_sq: f64,
    pub normalized_var_x: f64,
    pub normalized_var_p: f64,
}

impl UncertaintyReport {
    fn from_moments(lambda: f64, amplitude: f64, var_x: f64, var_p: f64, norm_sq: f64) -> Self {
        // −i[x, p] = 1 with h = 1
        let rhs = 0.25 * norm_sq * norm_sq;
        Self {
            lambda,
            amplitude,
            var_x,
            var_p,
            rhs,
            ratio: var_x * var_p / rhs,
            norm_sq,
            normalized_var_x: var_x / norm_sq,
            normalized_var_p: var_p / norm_sq,
        }
    }
}

fn check_uncertainty_args(lambda: f64, amplitude: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::param("lambda", format!("must be positive and finite, got {lambda}")));
    }
    if !(amplitude.is_finite() && amplitude > 0.0) {
        return Err(Error::param("amplitude", format!("must be positive and finite, got {amplitude}")));
    }
    Ok(())
}

/// Closed forms:
/// `σ²(x) = K²√π(1+λ)^{3/2}/(2λ^{3/2})`, `σ²(p) = K²√π λ^{1/2}/(2(1+λ)^{1/2})`,
/// right side `K⁴π(1+λ)/(4λ)`.
pub fn uncertainty_report(lambda: f64, amplitude: f64) -> Result<UncertaintyReport> {
    check_uncertainty_args(lambda, amplitude)?;
    let k2 = amplitude * amplitude;
    let sqrt_pi = PI.sqrt();
    let var_x = k2 * sqrt_pi * (1.0 + lambda).powf(1.5) / (2.0 * lambda.powf(1.5));
    let var_p = k2 * sqrt_pi * lambda.sqrt() / (2.0 * (1.0 + lambda).sqrt());
    let rhs = k2 * k2 * PI * (1.0 + lambda) / (4.0 * lambda);
    let norm_sq = k2 * (PI * (1.0 + lambda) / lambda).sqrt();
    Ok(UncertaintyReport {
        lambda,
        amplitude,
        var_x,
        var_p,
        rhs,
        ratio: var_x * var_p / rhs,
        norm_sq,
        normalized_var_x: var_x / norm_sq,
        normalized_var_p: var_p / norm_sq,
    })
}

/// The same report from the Gaussian moment formula, with `ψ' = −aψx`
/// and `a = λ/(1+λ)`.
pub fn uncertainty_report_moments(lambda: f64, amplitude: f64) -> Result<UncertaintyReport> {
    check_uncertainty_args(lambda, amplitude)?;
    let k2 = amplitude * amplitude;
    let a = lambda / (1.0 + lambda);
    let var_x = k2 * gaussian_moment(2, a)?;
    let var_p = k2 * a * a * gaussian_moment(2, a)?;
    let norm_sq = k2 * gaussian_moment(0, a)?;
    Ok(UncertaintyReport::from_moments(lambda, amplitude, var_x, var_p, norm_sq))
}

/// The same report by Gauss–Hermite quadrature of `∫x²ψ²`, `∫(ψ')²` and
/// `∫ψ²`, with `ψ'` taken by complex-step differentiation of `ψ`.
pub fn uncertainty_report_numeric(lambda: f64, amplitude: f64, rule: &QuadratureRule1D) -> Result<UncertaintyReport> {
    check_uncertainty_args(lambda, amplitude)?;
    let width = lambda / (2.0 * (1.0 + lambda));
    let psi = |x: Complex64| (x * x * -width).exp() * amplitude;
    const STEP: f64 = 1e-20;
    let dpsi = |x: f64| psi(Complex64::new(x, STEP)).im / STEP;
    let psi_re = |x: f64| psi(Complex64::new(x, 0.0)).re;

    // absorb e^{−2·width·x²} = e^{−a x²} into the rule
    let scale = 2.0 * width;
    let rules = [rule];
    let var_x = integrate(|x| x[0] * x[0] * psi_re(x[0]).powi(2) * (scale * x[0] * x[0]).exp(), &rules, &[scale])?;
    let var_p = integrate(|x| dpsi(x[0]).powi(2) * (scale * x[0] * x[0]).exp(), &rules, &[scale])?;
    let norm_sq = integrate(|x| psi_re(x[0]).powi(2) * (scale * x[0] * x[0]).exp(), &rules, &[scale])?;
    Ok(UncertaintyReport::from_moments(lambda, amplitude, var_x, var_p, norm_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite;
    use approx::assert_relative_eq;

    fn grid() -> GridSpec {
        GridSpec::new(10.0, 2000).unwrap()
    }

    #[test]
    fn spectrum_unit_h() {
        let spec = OscillatorSpec::new(1, 1.0).unwrap();
        let s = spectrum(&spec, &grid(), 4).unwrap();
        assert!(s.warning.is_none());
        for (j, e) in s.eigenvalues.iter().enumerate() {
            assert!((e - (2.0 * j as f64 + 1.0)).abs() < 1e-3, "{j}: {e}");
        }
    }

    #[test]
    fn spectrum_by_additivity() {
        let spec = OscillatorSpec::new(2, 1.0).unwrap();
        let s = spectrum(&spec, &grid(), 3).unwrap();
        assert!((s.eigenvalues[0] - 2.0).abs() < 1e-3);
        // first excited level is doubly degenerate
        assert!((s.eigenvalues[1] - 4.0).abs() < 1e-3);
        assert!((s.eigenvalues[2] - 4.0).abs() < 1e-3);
    }

    #[test]
    fn spectrum_half_h() {
        let unit = spectrum(&OscillatorSpec::new(1, 0.5).unwrap(), &grid(), 2).unwrap();
        assert!((unit.eigenvalues[0] - 0.5).abs() < 1e-3);
        assert!((unit.eigenvalues[1] - 2.5).abs() < 1e-3);

        let spec = OscillatorSpec::with_convention(1, 0.5, MomentumConvention::Scaled).unwrap();
        let scaled = spectrum(&spec, &grid(), 2).unwrap();
        assert!((scaled.eigenvalues[0] - 0.5).abs() < 1e-3);
        assert!((scaled.eigenvalues[1] - 1.5).abs() < 1e-3);
    }

    #[test]
    fn spectrum_guards() {
        let spec = OscillatorSpec::new(1, 1.0).unwrap();
        assert!(spectrum(&spec, &grid(), 0).is_err());
        assert!(spectrum(&spec, &grid(), 11).is_err());
        let coarse = spectrum(&spec, &GridSpec::new(10.0, 100).unwrap(), 2).unwrap();
        assert!(coarse.warning.is_some());
        assert!(GridSpec::new(10.0, 2).is_err());
        assert!(OscillatorSpec::new(1, 0.0).is_err());
    }

    #[test]
    fn ground_state_examples() {
        let spec = OscillatorSpec::new(1, 1.0).unwrap();
        assert!(ground_state_residual(&spec, &grid()).unwrap() <= 1e-4);
        let wrong = eigen_residual(&spec, &grid(), &|x| (-0.5 * x * x).exp(), 2.0).unwrap();
        assert!((wrong - 1.0).abs() < 1e-3, "{wrong}");
        let first = eigen_residual(&spec, &grid(), &|x| x * (-0.5 * x * x).exp(), 3.0).unwrap();
        assert!(first <= 1e-4);
        // x²e^{−x²/2} is not an eigenfunction; the Hermite function (2x²−1)e^{−x²/2} is
        let mono = eigen_residual(&spec, &grid(), &|x| x * x * (-0.5 * x * x).exp(), 5.0).unwrap();
        assert!(mono > 0.1);
        let herm = eigen_residual(&spec, &grid(), &|x| (2.0 * x * x - 1.0) * (-0.5 * x * x).exp(), 5.0).unwrap();
        assert!(herm <= 1e-3, "{herm}");

        let scaled = OscillatorSpec::with_convention(1, 0.5, MomentumConvention::Scaled).unwrap();
        assert!(ground_state_residual(&scaled, &grid()).is_err());
        let unit_half = OscillatorSpec::new(1, 0.5).unwrap();
        assert!(ground_state_residual(&unit_half, &grid()).unwrap() <= 1e-4);
    }

    #[test]
    fn ladder_examples() {
        let g0 = |x: f64| (-0.5 * x * x).exp();
        let g2 = |x: f64| x * x * (-0.5 * x * x).exp();
        for convention in [MomentumConvention::Unit, MomentumConvention::Scaled] {
            for h in [1.0, 0.5] {
                let spec = OscillatorSpec::with_convention(1, h, convention).unwrap();
                let r = ladder_identity_residual(&spec, &[&g0, &g2], &grid()).unwrap();
                assert!(r <= 1e-3, "{convention:?} h={h}: {r}");
            }
        }
        let zero = |_: f64| 0.0;
        let spec = OscillatorSpec::new(1, 1.0).unwrap();
        assert!(matches!(ladder_identity_residual(&spec, &[&zero], &grid()), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator_residual(&grid(), 1.0).unwrap() <= 1e-3);
        assert!(commutator_residual(&grid(), 0.5).unwrap() <= 1e-3);
        let (xx, pp) = self_commutator_residuals(&grid(), 1.0).unwrap();
        assert_eq!((xx, pp), (0.0, 0.0));
    }

    #[test]
    fn commutator_second_order() {
        let coarse = GridSpec::new(10.0, 499).unwrap();
        let a = commutator_residual(&coarse, 1.0).unwrap();
        let b = commutator_residual(&coarse.refined(), 1.0).unwrap();
        assert!((3.5..4.5).contains(&(a / b)), "{}", a / b);
    }

    #[test]
    fn uncertainty_examples() {
        let r = uncertainty_report(1.0, 1.0).unwrap();
        assert_relative_eq!(r.var_x, 2.506_628_274_631_000_7, max_relative = 1e-14);
        assert_relative_eq!(r.var_p, 0.626_657_068_657_750_1, max_relative = 1e-14);
        assert_relative_eq!(r.var_x * r.var_p, std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
        assert_relative_eq!(r.rhs, std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(uncertainty_report(-1.0, 1.0).is_err());
        assert!(uncertainty_report(1.0, 0.0).is_err());
        // λ → ∞: product → K⁴π/4
        let big = uncertainty_report(1e9, 2.0).unwrap();
        assert_relative_eq!(big.var_x * big.var_p, 16.0 * PI / 4.0, max_relative = 1e-8);
    }

    #[test]
    fn uncertainty_routes_agree() {
        let rule = gauss_hermite(40).unwrap();
        for lambda in [0.1, 1.0, 10.0] {
            for k in [0.5, 3.0] {
                let closed = uncertainty_report(lambda, k).unwrap();
                let moments = uncertainty_report_moments(lambda, k).unwrap();
                let quad = uncertainty_report_numeric(lambda, k, &rule).unwrap();
                for other in [moments, quad] {
                    assert_relative_eq!(closed.var_x, other.var_x, max_relative = 1e-9);
                    assert_relative_eq!(closed.var_p, other.var_p, max_relative = 1e-9);
                    assert_relative_eq!(closed.rhs, other.rhs, max_relative = 1e-9);
                    assert_relative_eq!(closed.norm_sq, other.norm_sq, max_relative = 1e-9);
                }
            }
        }
    }
}
