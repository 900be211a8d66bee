//! The weighted Bergman (Segal–Bargmann) space over `C^n`.
//!
//! Weight `ρ(z) = (α/π)^n e^{−α z·z̄}` (a probability density for Lebesgue
//! area) and reproducing kernel `K(z, w) = e^{α z·w̄}`. The trace used here is
//! the inner-product trace `Tr(g) = ∫ g ρ dA`; for a Gaussian symbol of
//! compression `λ` it equals `A·(α/(α+λ))^{n/2}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
use crate::quadrature::{self, QuadratureRule1D, MAX_NUMERIC_DIM};
use crate::semiclassics::PolynomialSymbol;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub dim: usize,
    pub params: QuantParams,
}

impl WeightSpec {
    pub fn new(dim: usize, alpha: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        Ok(Self { dim, params: QuantParams::new(alpha)? })
    }

    /// `∫ ρ dA` by quadrature (`n ≤ 2`); equals 1.
    pub fn total_mass(&self, rule: &QuadratureRule1D) -> Result<f64> {
        integrate_against_weight(self.dim, self.params, rule, |_| Complex64::new(1.0, 0.0)).map(|c| c.re)
    }
}

/// `α·Σ_j z_j·w̄_j`, the logarithm of the kernel.
pub fn log_kernel(z: &ComplexPoint, w: &ComplexPoint, q: QuantParams) -> Result<Complex64> {
    w.check_dim(z.dim())?;
    Ok(log_kernel_slice(z.coords(), w.coords(), q))
}

pub(crate) fn log_kernel_slice(z: &[Complex64], w: &[Complex64], q: QuantParams) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum::<Complex64>() * q.alpha()
}

/// `log K(z, z) = α|z|²`.
pub(crate) fn log_kernel_diag(z: &ComplexPoint, q: QuantParams) -> f64 {
    q.alpha() * z.norm_sqr()
}

/// `K(z, w) = e^{α z·w̄}`.
pub fn kernel(z: &ComplexPoint, w: &ComplexPoint, q: QuantParams) -> Result<Complex64> {
    log_kernel(z, w, q).map(Complex64::exp)
}

pub(crate) fn log_weight_slice(w: &[Complex64], q: QuantParams) -> f64 {
    let alpha = q.alpha();
    let r2: f64 = w.iter().map(|c| c.norm_sqr()).sum();
    w.len() as f64 * (alpha / PI).ln() - alpha * r2
}

/// `ρ(z) = (α/π)^n e^{−α z·z̄}`.
pub fn weight(z: &ComplexPoint, q: QuantParams) -> f64 {
    let alpha = q.alpha();
    (alpha / PI).powi(z.dim() as i32) * (-alpha * z.norm_sqr()).exp()
}

/// `∫ f(w) ρ(w) dA(w)` by tensor Gauss–Hermite with `e^{−α|w|²}` absorbed
/// (`w = (s + i·t)/√α`). The integrand still carries the literal weight
/// divided by the absorbed factor.
fn integrate_against_weight(
    dim: usize,
    q: QuantParams,
    rule: &QuadratureRule1D,
    mut f: impl FnMut(&[Complex64]) -> Complex64,
) -> Result<Complex64> {
    if dim == 0 || dim > MAX_NUMERIC_DIM {
        return Err(Error::param("dim", format!("quadrature supports 1 ≤ n ≤ {MAX_NUMERIC_DIM}, got {dim}")));
    }
    let alpha = q.alpha();
    let step = alpha.sqrt().recip();
    let rules = vec![rule; 2 * dim];
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let sum: Complex64 = quadrature::tensor_sum(&rules, |t| {
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = Complex64::new(t[2 * j], t[2 * j + 1]) * step;
        }
        let r2: f64 = w.iter().map(|c| c.norm_sqr()).sum();
        let log_absorbed = dim as f64 * (alpha / PI).ln() - alpha * r2;
        Ok(f(&w) * (log_weight_slice(&w, q) - log_absorbed).exp())
    })?;
    Ok(sum / PI.powi(dim as i32))
}

/// `|∫ p(w) K(z, w) ρ(w) dA(w) − p(z)|` for a holomorphic polynomial `p`.
pub fn reproducing_residual(
    p: &PolynomialSymbol,
    z: &ComplexPoint,
    q: QuantParams,
    rule: &QuadratureRule1D,
) -> Result<f64> {
    z.check_dim(p.dim())?;
    if let Some(gamma) = p.first_antiholomorphic() {
        return Err(Error::NotHolomorphic(gamma));
    }
    let zc = z.coords();
    let integral = integrate_against_weight(p.dim(), q, rule, |w| p.eval_slice(w) * log_kernel_slice(zc, w, q).exp())?;
    Ok((integral - p.eval_slice(zc)).norm())
}

/// Inner-product trace `Tr(g) = (α/π)^n ∫ g(z) e^{−α z·z̄} dA`, closed form.
pub fn trace(g: &GaussianSymbol, q: QuantParams) -> f64 {
    let alpha = q.alpha();
    g.amplitude() * (alpha / (alpha + g.compression())).powf(0.5 * g.dim() as f64)
}

/// [`trace`] by quadrature (`n ≤ 2`).
pub fn trace_numeric(g: &GaussianSymbol, q: QuantParams, rule: &QuadratureRule1D) -> Result<f64> {
    use crate::quadrature::Symbol;
    integrate_against_weight(g.dim(), q, rule, |w| g.value(w)).map(|c| c.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    /// `Tr((B_α f)²)` for the unit-amplitude symbol.
    pub raw_trace: f64,
    /// `Tr(B̃²)` with `B̃ = B_α f / (α/(α+λ))^{n/4}`.
    pub normalized_trace: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub dim: usize,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::param("lambda", format!("must be positive and finite, got {lambda}")));
    }
    Ok(())
}

/// The squared transform `(B_α f)²` of the unit Gaussian of compression
/// `λ`, and the squared normalized transform `B̃²`.
fn squared_transforms(lambda: f64, q: QuantParams, n: usize) -> Result<(GaussianSymbol, GaussianSymbol)> {
    check_lambda(lambda)?;
    let b = GaussianSymbol::new(n, 1.0, lambda)?.berezin_transform(q);
    let squared = GaussianSymbol::new(n, b.amplitude() * b.amplitude(), 2.0 * b.compression())?;
    let ratio = q.alpha() / (q.alpha() + lambda);
    let normalized = squared.scale(ratio.powf(-0.5 * n as f64))?;
    Ok((squared, normalized))
}

/// Purity index of the transformed Gaussian: `Tr(B̃²) = (α/(α+3λ))^{n/2}`.
pub fn purity_index(lambda: f64, q: QuantParams, n: usize) -> Result<TraceReport> {
    let (squared, _) = squared_transforms(lambda, q, n)?;
    let alpha = q.alpha();
    Ok(TraceReport {
        raw_trace: trace(&squared, q),
        normalized_trace: (alpha / (alpha + 3.0 * lambda)).powf(0.5 * n as f64),
        alpha,
        lambda,
        dim: n,
    })
}

/// [`purity_index`] with both traces computed by quadrature from the
/// transformed symbols (`n ≤ 2`).
pub fn purity_index_numeric(lambda: f64, q: QuantParams, n: usize, rule: &QuadratureRule1D) -> Result<TraceReport> {
    let (squared, normalized) = squared_transforms(lambda, q, n)?;
    Ok(TraceReport {
        raw_trace: trace_numeric(&squared, q, rule)?,
        normalized_trace: trace_numeric(&normalized, q, rule)?,
        alpha: q.alpha(),
        lambda,
        dim: n,
    })
}
