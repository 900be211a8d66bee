//! Gaussian symbols `A·exp(−λ/4·Σ_j (z_j + z̄_j)²)` on `C^n` and their
//! closed-form calculus.
//!
//! Coordinates are `z_j = x_j + i·y_j` with Lebesgue area measure, so
//! `(z_j + z̄_j)² = 4·x_j²` and a symbol of compression `λ` is
//! `A·exp(−λ·Σ x_j²)`. Under this convention the Berezin transform with
//! parameter `α` is the heat flow `exp(Δ/(4α))` and acts on the family by
//!
//! ```text
//! λ ↦ αλ/(α+λ),    A ↦ A·(α/(α+λ))^{n/2}.
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Quantum parameter `α = 1/h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantParams {
    alpha: f64,
}

impl QuantParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::param("alpha", format!("must be positive and finite, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `h = 1/α`.
    pub fn planck(&self) -> f64 {
        1.0 / self.alpha
    }
}

/// A point of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::param("point", "needs at least one coordinate"));
        }
        if let Some(c) = coords.iter().find(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(format!("coordinate {c}")));
        }
        Ok(Self { coords })
    }

    /// A point on the real slice `y = 0`.
    pub fn real(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self { coords: vec![Complex64::new(0.0, 0.0); dim.max(1)] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// `Σ_j (z_j + z̄_j)²`, always real and non-negative.
    pub fn re_square_sum(&self) -> f64 {
        self.coords.iter().map(|c| (2.0 * c.re).powi(2)).sum()
    }

    /// `z·z̄ = Σ_j |z_j|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }
}

/// The Gaussian classical observable `A·exp(−λ/4·Σ_j (z_j + z̄_j)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSymbol {
    dim: usize,
    amplitude: f64,
    compression: f64,
}

impl GaussianSymbol {
    pub fn new(dim: usize, amplitude: f64, compression: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::param("amplitude", format!("must be positive and finite, got {amplitude}")));
        }
        if !(compression.is_finite() && compression >= 0.0) {
            return Err(Error::param("compression", format!("must be non-negative and finite, got {compression}")));
        }
        Ok(Self { dim, amplitude, compression })
    }

    /// The constant symbol `1`.
    pub fn constant(dim: usize) -> Result<Self> {
        Self::new(dim, 1.0, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn compression(&self) -> f64 {
        self.compression
    }

    /// Same width, amplitude multiplied by `factor > 0`.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::new(self.dim, self.amplitude * factor, self.compression)
    }

    /// Same width, amplitude 1.
    pub fn unit(&self) -> Self {
        Self { amplitude: 1.0, ..*self }
    }

    pub fn eval(&self, z: &ComplexPoint) -> Result<f64> {
        z.check_dim(self.dim)?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &ComplexPoint) -> f64 {
        self.amplitude * (-0.25 * self.compression * z.re_square_sum()).exp()
    }

    /// Closed-form Berezin transform with quantum parameter `α`.
    pub fn berezin_transform(&self, q: QuantParams) -> Self {
        let alpha = q.alpha();
        let lambda = self.compression;
        let ratio = alpha / (alpha + lambda);
        Self {
            dim: self.dim,
            amplitude: self.amplitude * ratio.powf(0.5 * self.dim as f64),
            compression: alpha * lambda / (alpha + lambda),
        }
    }

    /// Heat flow `exp(tΔ/4)` with `Δ = 4·Σ ∂_{z_j}∂_{z̄_j}`, for `t ≥ 0`.
    ///
    /// Computed through variances: `exp(−λx²)` has variance `1/(2λ)` along
    /// each real axis `x_j`, and the flow adds `t/2` to it.
    pub fn heat_flow(&self, t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::param("t", format!("must be non-negative and finite, got {t}")));
        }
        if self.compression == 0.0 || t == 0.0 {
            return Ok(*self);
        }
        let var = 0.5 / self.compression;
        let var_t = var + 0.5 * t;
        Ok(Self {
            dim: self.dim,
            amplitude: self.amplitude * (var / var_t).powf(0.5 * self.dim as f64),
            compression: 0.5 / var_t,
        })
    }

    /// Heat flow at time `t = 1/α`; coincides with [`Self::berezin_transform`].
    pub fn heat_evolve(&self, q: QuantParams) -> Self {
        // t = 1/α is finite and positive for valid params
        self.heat_flow(q.planck()).expect("1/alpha is a valid heat time")
    }

    /// Two successive transforms, first with `q1` then with `q2`.
    pub fn transform_compose(&self, q1: QuantParams, q2: QuantParams) -> Self {
        self.berezin_transform(q1).berezin_transform(q2)
    }

    /// `Δg/4` at `z`, in closed form: `(λ²u² − 2nλ)/4 · g(z)` with
    /// `u² = Σ_j (z_j + z̄_j)²`.
    pub fn quarter_laplacian(&self, z: &ComplexPoint) -> Result<f64> {
        let g = self.eval(z)?;
        let lambda = self.compression;
        let u2 = z.re_square_sum();
        Ok(0.25 * (lambda * lambda * u2 - 2.0 * self.dim as f64 * lambda) * g)
    }

    /// First-order semiclassical approximation of the unit-amplitude
    /// transform: `[1 + λ²u²/(4α) − (n/2)(λ/α)]·exp(−λu²/4)`.
    pub fn first_order_approx(&self, q: QuantParams, z: &ComplexPoint) -> Result<f64> {
        z.check_dim(self.dim)?;
        let lambda = self.compression;
        let alpha = q.alpha();
        let u2 = z.re_square_sum();
        let bracket = 1.0 + lambda * lambda * u2 / (4.0 * alpha) - 0.5 * self.dim as f64 * lambda / alpha;
        Ok(bracket * (-0.25 * lambda * u2).exp())
    }

    /// `|B_α(g)(z) − first_order_approx(z)|` with the amplitude set to 1.
    /// Decays like `α⁻²`.
    pub fn taylor_remainder(&self, q: QuantParams, z: &ComplexPoint) -> Result<f64> {
        let exact = self.unit().berezin_transform(q).eval(z)?;
        Ok((exact - self.first_order_approx(q, z)?).abs())
    }
}

/// `(k−1)!! = 1·3·5⋯(k−1)` for even `k`; 1 for `k = 0`.
pub fn odd_double_factorial(k: u32) -> f64 {
    (1..k).step_by(2).map(f64::from).product()
}

/// Odd moments of a centred Gaussian vanish by symmetry.
pub fn moment_vanishes_by_symmetry(k: u32) -> bool {
    k % 2 == 1
}

/// `∫ x^k e^{−a x²} dx = (k−1)!!·√π / (2^{k/2}·a^{(k+1)/2})` for even `k`.
///
/// Odd `k` is rejected rather than returning 0; use
/// [`moment_vanishes_by_symmetry`] when the zero is intended.
pub fn gaussian_moment(k: u32, a: f64) -> Result<f64> {
    if moment_vanishes_by_symmetry(k) {
        return Err(Error::param("k", format!("moment order must be even, got {k}")));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::param("a", format!("must be positive and finite, got {a}")));
    }
    let half = f64::from(k / 2);
    Ok(odd_double_factorial(k) * std::f64::consts::PI.sqrt() / (2f64.powf(half) * a.powf(half + 0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(alpha: f64) -> QuantParams {
        QuantParams::new(alpha).unwrap()
    }

    fn g(n: usize, a: f64, l: f64) -> GaussianSymbol {
        GaussianSymbol::new(n, a, l).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuantParams::new(0.0).is_err());
        assert!(QuantParams::new(f64::NAN).is_err());
        assert!(GaussianSymbol::new(0, 1.0, 1.0).is_err());
        assert!(GaussianSymbol::new(1, 0.0, 1.0).is_err());
        assert!(GaussianSymbol::new(1, 1.0, -1.0).is_err());
        assert!(GaussianSymbol::new(1, 1.0, f64::INFINITY).is_err());
        assert!(ComplexPoint::real(&[f64::NAN]).is_err());
    }

    #[test]
    fn eval_examples() {
        let z = ComplexPoint::new(vec![Complex64::new(0.5, 0.7)]).unwrap();
        assert_eq!(g(1, 1.0, 0.0).eval(&z).unwrap(), 1.0);
        assert_eq!(g(1, 1.0, 1.0).eval(&ComplexPoint::origin(1)).unwrap(), 1.0);
        // (z + z̄)² = (2·0.5)² = 1
        assert_relative_eq!(g(1, 1.0, 1.0).eval(&z).unwrap(), 0.778_800_783_071_404_9, max_relative = 1e-15);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let err = g(2, 1.0, 1.0).eval(&ComplexPoint::origin(1)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn eval_ignores_imaginary_shift() {
        let s = g(2, 1.3, 0.8);
        let a = ComplexPoint::new(vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 2.0)]).unwrap();
        let b = ComplexPoint::new(vec![Complex64::new(0.3, -5.0), Complex64::new(-0.2, 0.0)]).unwrap();
        assert_eq!(s.eval(&a).unwrap(), s.eval(&b).unwrap());
    }

    #[test]
    fn transform_examples() {
        let b = g(1, 1.0, 1.0).berezin_transform(q(1.0));
        assert_relative_eq!(b.amplitude(), std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_eq!(b.compression(), 0.5);

        let c = g(1, 1.0, 0.0).berezin_transform(q(3.0));
        assert_eq!((c.amplitude(), c.compression()), (1.0, 0.0));

        let d = g(1, 1.0, 1.0).berezin_transform(q(1e4));
        assert_relative_eq!(d.compression(), 1e4 / 10001.0, max_relative = 1e-15);
        assert_relative_eq!(d.amplitude(), (1e4f64 / 10001.0).sqrt(), max_relative = 1e-15);
        assert!((d.amplitude() - 0.99995).abs() < 1e-8);
    }

    #[test]
    fn heat_examples() {
        let b = g(2, 1.0, 2.0).heat_evolve(q(2.0));
        assert_relative_eq!(b.amplitude(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(b.compression(), 1.0, max_relative = 1e-15);
        let c = g(3, 2.0, 0.0).heat_evolve(q(0.7));
        assert_eq!(c, g(3, 2.0, 0.0));
        assert!(g(1, 1.0, 1.0).heat_flow(-1.0).is_err());
    }

    #[test]
    fn compose_examples() {
        let c = g(1, 1.0, 1.0).transform_compose(q(1.0), q(1.0));
        assert_relative_eq!(c.compression(), 1.0 / 3.0, max_relative = 1e-15);

        let c = g(1, 1.0, 2.0).transform_compose(q(2.0), q(2.0));
        assert_relative_eq!(c.compression(), 2.0 / 3.0, max_relative = 1e-15);
        // step factors (2/4)^{1/2} then (2/3)^{1/2}
        assert_relative_eq!(c.amplitude(), (0.5f64 * 2.0 / 3.0).sqrt(), max_relative = 1e-15);
        let heat = g(1, 1.0, 2.0).heat_flow(0.5 + 0.5).unwrap();
        assert_relative_eq!(c.amplitude(), heat.amplitude(), max_relative = 1e-14);
        assert_relative_eq!(c.compression(), heat.compression(), max_relative = 1e-14);

        let z = g(2, 3.0, 0.0).transform_compose(q(1.0), q(9.0));
        assert_eq!(z, g(2, 3.0, 0.0));
    }

    #[test]
    fn taylor_examples() {
        let z0 = ComplexPoint::origin(1);
        for alpha in [1.0, 10.0, 1e3] {
            for x in [0.0, 0.4, 2.0] {
                let z = ComplexPoint::real(&[x]).unwrap();
                assert_eq!(g(1, 1.0, 0.0).taylor_remainder(q(alpha), &z).unwrap(), 0.0);
            }
        }
        let r: Vec<f64> =
            [10.0, 20.0, 40.0].iter().map(|&a| g(1, 1.0, 1.0).taylor_remainder(q(a), &z0).unwrap()).collect();
        for w in r.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        }
        let z = ComplexPoint::real(&[0.3]).unwrap();
        assert!(g(1, 1.0, 1.0).taylor_remainder(q(100.0), &z).unwrap() < 1e-3);
    }

    #[test]
    fn moment_examples() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(gaussian_moment(0, 2.0).unwrap(), (pi / 2.0).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gaussian_moment(2, 1.0).unwrap(), pi.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gaussian_moment(4, 1.0).unwrap(), 0.75 * pi.sqrt(), max_relative = 1e-15);
        assert!(gaussian_moment(3, 1.0).is_err());
        assert!(moment_vanishes_by_symmetry(3));
        assert!(gaussian_moment(2, 0.0).is_err());
        assert_eq!(odd_double_factorial(8), 105.0);
    }

    #[test]
    fn quarter_laplacian_matches_finite_differences() {
        let s = g(2, 1.7, 0.9);
        let x = [0.35, -0.6];
        let z = ComplexPoint::real(&x).unwrap();
        // Δ/4 = Σ_j (∂²_{x_j} + ∂²_{y_j})/4, y-independent
        let h = 1e-4;
        let f = |p: [f64; 2]| s.eval(&ComplexPoint::real(&p).unwrap()).unwrap();
        let mut lap = 0.0;
        for j in 0..2 {
            let mut up = x;
            let mut dn = x;
            up[j] += h;
            dn[j] -= h;
            lap += (f(up) - 2.0 * f(x) + f(dn)) / (h * h);
        }
        assert_relative_eq!(s.quarter_laplacian(&z).unwrap(), lap / 4.0, max_relative = 1e-6);
    }
}
