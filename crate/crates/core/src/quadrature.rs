//! Independent integration oracle.
//!
//! Gauss–Hermite rules integrate `∫ f(t) e^{−t²} dt`. Every integrand that
//! shows up in this crate is a Gaussian times a polynomial or a bounded
//! smooth symbol, so modest orders are already exact to round-off.
//! Tensor sums are reduced pairwise in a fixed order, so results do not
//! depend on anything but the inputs.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::bergman;
use crate::gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
use crate::{Error, Result};

pub const MAX_ORDER: usize = 512;

/// Highest tensor dimension accepted by [`integrate`].
pub const MAX_TENSOR_DIM: usize = 4;

/// Highest complex dimension accepted by [`berezin_transform_numeric`].
pub const MAX_NUMERIC_DIM: usize = 2;

/// A Gauss–Hermite rule: `Σ w_i f(t_i) ≈ ∫ f(t) e^{−t²} dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule1D {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule1D {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(t_i)`, summed pairwise.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).collect();
        pairwise_sum(&terms)
    }
}

/// Normalized Hermite functions `ψ_{m−1}(x)` and `ψ_m(x)`.
fn hermite_functions(m: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..m {
        let next = (2.0 / (k + 1) as f64).sqrt() * x * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// Gauss–Hermite rule of order `m` (`1 ≤ m ≤ 512`).
///
/// Nodes are the eigenvalues of the Jacobi matrix of the Hermite recurrence
/// (zero diagonal, off-diagonal `√(k/2)`), found by bisection and polished
/// with Newton steps on the Hermite function `ψ_m`. Weights come from the
/// Christoffel formula `w = e^{−t²}/(m·ψ_{m−1}(t)²)`, evaluated in log space;
/// for large `m` the outermost weights fall below the `f64` range and
/// underflow to zero.
pub fn gauss_hermite(m: usize) -> Result<QuadratureRule1D> {
    if !(1..=MAX_ORDER).contains(&m) {
        return Err(Error::param("m", format!("rule order must lie in 1..={MAX_ORDER}, got {m}")));
    }
    let off: Vec<f64> = (1..m).map(|k| (0.5 * k as f64).sqrt()).collect();
    let jacobi = crate::tridiag::SymTridiagonal::new(vec![0.0; m], off)?;

    // non-negative half, mirrored for exact symmetry
    let half = m / 2;
    let mut upper = Vec::with_capacity(m - half);
    for k in half..m {
        let mut t = if m % 2 == 1 && k == half { 0.0 } else { jacobi.eigenvalue(k)? };
        if t != 0.0 {
            for _ in 0..3 {
                let (p_prev, p) = hermite_functions(m, t);
                let step = p / ((2.0 * m as f64).sqrt() * p_prev);
                if !step.is_finite() {
                    break;
                }
                t -= step;
                if step.abs() <= 4.0 * f64::EPSILON * t.abs() {
                    break;
                }
            }
        }
        let (p_prev, _) = hermite_functions(m, t);
        let log_w = -t * t - (m as f64).ln() - 2.0 * p_prev.abs().ln();
        upper.push((t, log_w.exp()));
    }

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for &(t, w) in upper.iter().rev() {
        if t == 0.0 && m % 2 == 1 {
            continue;
        }
        nodes.push(-t);
        weights.push(w);
    }
    for &(t, w) in &upper {
        nodes.push(t);
        weights.push(w);
    }
    Ok(QuadratureRule1D { nodes, weights })
}

pub(crate) fn pairwise_sum<T: Copy + std::ops::Add<Output = T> + Default>(xs: &[T]) -> T {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::default(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub(crate) trait Finite {
    fn finite(&self) -> bool;
}

impl Finite for f64 {
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl Finite for Complex64 {
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `Σ_{i_1..i_d} Π_k w_{i_k} · f(t_{i_1}, …, t_{i_d})` over unit nodes,
/// reduced axis by axis with pairwise sums.
pub(crate) fn tensor_sum<T, F>(rules: &[&QuadratureRule1D], mut f: F) -> Result<T>
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Finite,
    F: FnMut(&[f64]) -> Result<T>,
{
    fn recurse<T, F>(rules: &[&QuadratureRule1D], axis: usize, point: &mut [f64], f: &mut F) -> Result<T>
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Finite,
        F: FnMut(&[f64]) -> Result<T>,
    {
        if axis == rules.len() {
            let v = f(point)?;
            if !v.finite() {
                return Err(Error::NonFinite(format!("integrand at node {point:?}")));
            }
            return Ok(v);
        }
        let rule = rules[axis];
        let mut terms = Vec::with_capacity(rule.order());
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            point[axis] = t;
            terms.push(recurse(rules, axis + 1, point, f)? * w);
        }
        Ok(pairwise_sum(&terms))
    }
    let mut point = vec![0.0; rules.len()];
    recurse(rules, 0, &mut point, &mut f)
}

fn check_tensor_shape(rules: &[&QuadratureRule1D], scales: &[f64]) -> Result<()> {
    if rules.is_empty() || rules.len() > MAX_TENSOR_DIM {
        return Err(Error::param("rules", format!("need 1..={MAX_TENSOR_DIM} axes, got {}", rules.len())));
    }
    if scales.len() != rules.len() {
        return Err(Error::DimensionMismatch { expected: rules.len(), found: scales.len() });
    }
    if let Some(s) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(Error::param("scale", format!("must be positive and finite, got {s}")));
    }
    Ok(())
}

/// `∫_{R^d} f(x)·exp(−Σ_k s_k x_k²) dx` by tensor Gauss–Hermite, with the
/// Gaussian factor absorbed into the rules.
pub fn integrate(f: impl Fn(&[f64]) -> f64, rules: &[&QuadratureRule1D], scales: &[f64]) -> Result<f64> {
    check_tensor_shape(rules, scales)?;
    let inv_sqrt: Vec<f64> = scales.iter().map(|s| s.sqrt().recip()).collect();
    let mut x = vec![0.0; rules.len()];
    let sum = tensor_sum(rules, |t| {
        for ((xk, tk), c) in x.iter_mut().zip(t).zip(&inv_sqrt) {
            *xk = tk * c;
        }
        Ok(f(&x))
    })?;
    Ok(sum * inv_sqrt.iter().product::<f64>())
}

/// Complex-valued counterpart of [`integrate`].
pub fn integrate_complex(
    f: impl Fn(&[f64]) -> Complex64,
    rules: &[&QuadratureRule1D],
    scales: &[f64],
) -> Result<Complex64> {
    check_tensor_shape(rules, scales)?;
    let inv_sqrt: Vec<f64> = scales.iter().map(|s| s.sqrt().recip()).collect();
    let mut x = vec![0.0; rules.len()];
    let sum = tensor_sum(rules, |t| {
        for ((xk, tk), c) in x.iter_mut().zip(t).zip(&inv_sqrt) {
            *xk = tk * c;
        }
        Ok(f(&x))
    })?;
    Ok(sum * inv_sqrt.iter().product::<f64>())
}

/// A function on `C^n` that can be fed to the Berezin integral.
pub trait Symbol {
    fn dim(&self) -> usize;

    fn value(&self, w: &[Complex64]) -> Complex64;

    /// A rate `γ` with `|f(w)| ≤ C·e^{γ|w|²}`. The Berezin integral with
    /// parameter `α` converges only for `γ < α`.
    fn growth_rate(&self) -> f64 {
        0.0
    }
}

impl Symbol for GaussianSymbol {
    fn dim(&self) -> usize {
        GaussianSymbol::dim(self)
    }

    fn value(&self, w: &[Complex64]) -> Complex64 {
        let u2: f64 = w.iter().map(|c| (2.0 * c.re).powi(2)).sum();
        Complex64::new(self.amplitude() * (-0.25 * self.compression() * u2).exp(), 0.0)
    }
}

/// A closure used as a symbol, with a declared growth rate.
pub struct FnSymbol<F> {
    dim: usize,
    growth: f64,
    f: F,
}

impl<F: Fn(&[Complex64]) -> Complex64> FnSymbol<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, growth: 0.0, f }
    }

    pub fn with_growth(mut self, rate: f64) -> Self {
        self.growth = rate;
        self
    }
}

impl<F: Fn(&[Complex64]) -> Complex64> Symbol for FnSymbol<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, w: &[Complex64]) -> Complex64 {
        (self.f)(w)
    }

    fn growth_rate(&self) -> f64 {
        self.growth
    }
}

fn check_symbol(f: &impl Symbol, z: &ComplexPoint, q: QuantParams) -> Result<()> {
    z.check_dim(f.dim())?;
    let growth = f.growth_rate();
    if growth.is_nan() || growth >= q.alpha() {
        return Err(Error::Divergent { growth, alpha: q.alpha() });
    }
    Ok(())
}

/// `B_α f(z) = (1/K(z,z)) ∫ f(w)|K(z,w)|² ρ(w) dA(w)` by tensor Gauss–Hermite
/// over `R^{2n}`, `n ≤ 2`.
///
/// The substitution `w = z + (s + i·t)/√α` absorbs `e^{−α|w−z|²}` into the
/// rule; the integrand is the literal kernel-weight density divided by that
/// factor, evaluated in log space.
pub fn berezin_transform_numeric(f: &impl Symbol, z: &ComplexPoint, q: QuantParams, m: usize) -> Result<Complex64> {
    check_symbol(f, z, q)?;
    let n = z.dim();
    if n > MAX_NUMERIC_DIM {
        return Err(Error::param("dim", format!("numeric transform supports n ≤ {MAX_NUMERIC_DIM}, got {n}")));
    }
    let rule = gauss_hermite(m)?;
    let rules = vec![&rule; 2 * n];
    let alpha = q.alpha();
    let step = alpha.sqrt().recip();
    let zc = z.coords();
    let log_kzz = bergman::log_kernel_diag(z, q);

    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let sum: Complex64 = tensor_sum(&rules, |t| {
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = zc[j] + Complex64::new(t[2 * j], t[2 * j + 1]) * step;
        }
        let log_density = 2.0 * bergman::log_kernel_slice(zc, &w, q).re + bergman::log_weight_slice(&w, q) - log_kzz;
        let shift: f64 = w.iter().zip(zc).map(|(a, b)| (a - b).norm_sqr()).sum();
        let log_absorbed = n as f64 * (alpha / PI).ln() - alpha * shift;
        Ok(f.value(&w) * (log_density - log_absorbed).exp())
    })?;
    Ok(sum / PI.powi(n as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    samples: usize,
    seed: u64,
}

impl MonteCarloConfig {
    pub const MIN_SAMPLES: usize = 1_000;

    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples < Self::MIN_SAMPLES {
            return Err(Error::param("samples", format!("need at least {} samples, got {samples}", Self::MIN_SAMPLES)));
        }
        Ok(Self { samples, seed })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: Complex64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Monte-Carlo estimate of `B_α f(z)`: `w` is drawn from the normalized
/// measure `(α/π)^n e^{−α|w−z|²} dA(w)` (variance `1/(2α)` per real axis),
/// so the estimator is the sample mean of `f(w)`.
pub fn monte_carlo_transform(
    f: &impl Symbol,
    z: &ComplexPoint,
    q: QuantParams,
    cfg: MonteCarloConfig,
) -> Result<McEstimate> {
    check_symbol(f, z, q)?;
    let sigma = (0.5 / q.alpha()).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut w = z.coords().to_vec();
    let values: Vec<Complex64> = (0..cfg.samples)
        .map(|_| {
            for (wj, zj) in w.iter_mut().zip(z.coords()) {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                *wj = zj + Complex64::new(re, im) * sigma;
            }
            f.value(&w)
        })
        .collect();
    if let Some(v) = values.iter().find(|v| !v.finite()) {
        return Err(Error::NonFinite(format!("sample value {v}")));
    }
    let count = cfg.samples as f64;
    let mean = pairwise_sum(&values) / count;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean).norm_sqr()).collect();
    let var = pairwise_sum(&dev) / (count - 1.0);
    Ok(McEstimate { estimate: mean, stderr: (var / count).sqrt(), samples: cfg.samples, seed: cfg.seed })
}
