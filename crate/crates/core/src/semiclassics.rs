//! Polynomial symbols on `C^n`, the Wick star product and the first-order
//! semiclassical expansion of the Berezin transform.
//!
//! The star product realized here is the normal-ordered (Wick) product of
//! the Gaussian weight,
//!
//! ```text
//! f ⋆ g = Σ_β α^{−|β|}/β! · ∂_z^β f · ∂_z̄^β g,
//! ```
//!
//! whose order-`j` coefficient is `C_j(f, g) = Σ_{|β|=j} (1/β!) ∂_z^β f ∂_z̄^β g`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::convergence::loglog_slope;
use crate::gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
use crate::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Σ c_{βγ} z^β z̄^γ` with finitely many non-zero complex coefficients.
/// Terms are kept sorted lexicographically on `(β, γ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialWire", into = "PolynomialWire")]
pub struct PolynomialSymbol {
    dim: usize,
    terms: BTreeMap<Key, Complex64>,
}

impl PolynomialSymbol {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        Ok(Self { dim, terms: BTreeMap::new() })
    }

    pub fn constant(dim: usize, c: Complex64) -> Result<Self> {
        Self::from_terms(dim, [(vec![0; dim], vec![0; dim], c)])
    }

    /// `c·z^β z̄^γ`.
    pub fn monomial(beta: Vec<u32>, gamma: Vec<u32>, c: Complex64) -> Result<Self> {
        let dim = beta.len();
        Self::from_terms(dim, [(beta, gamma, c)])
    }

    /// `z_j` in dimension `dim`.
    pub fn z(dim: usize, j: usize) -> Result<Self> {
        let mut beta = vec![0; dim];
        *beta.get_mut(j).ok_or_else(|| Error::param("j", format!("coordinate {j} out of range")))? = 1;
        Self::monomial(beta, vec![0; dim], Complex64::new(1.0, 0.0))
    }

    /// `z̄_j` in dimension `dim`.
    pub fn zbar(dim: usize, j: usize) -> Result<Self> {
        let mut gamma = vec![0; dim];
        *gamma.get_mut(j).ok_or_else(|| Error::param("j", format!("coordinate {j} out of range")))? = 1;
        Self::monomial(vec![0; dim], gamma, Complex64::new(1.0, 0.0))
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Vec<u32>, Complex64)>) -> Result<Self> {
        let mut p = Self::zero(dim)?;
        for (beta, gamma, c) in terms {
            if beta.len() != dim || gamma.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: beta.len().max(gamma.len()) });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite(format!("coefficient {c}")));
            }
            p.accumulate((beta, gamma), c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, key: Key, c: Complex64) {
        if c == ZERO {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert(ZERO);
        *slot += c;
        if *slot == ZERO {
            self.terms.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(β, γ, c)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], Complex64)> {
        self.terms.iter().map(|((b, g), c)| (b.as_slice(), g.as_slice(), *c))
    }

    pub fn coeff(&self, beta: &[u32], gamma: &[u32]) -> Complex64 {
        self.terms.get(&(beta.to_vec(), gamma.to_vec())).copied().unwrap_or(ZERO)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(b, g)| b.iter().sum::<u32>() + g.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Largest coefficient modulus; 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The `γ` of the first term that depends on `z̄`, if any.
    pub fn first_antiholomorphic(&self) -> Option<Vec<u32>> {
        self.terms.keys().find(|(_, g)| g.iter().any(|&e| e > 0)).map(|(_, g)| g.clone())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self { dim: self.dim, terms: BTreeMap::new() };
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v * c);
        }
        out
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self { dim: self.dim, terms: BTreeMap::new() };
        for ((b1, g1), c1) in &self.terms {
            for ((b2, g2), c2) in &other.terms {
                out.accumulate((add_index(b1, b2), add_index(g1, g2)), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Mixed partial derivative `∂_z^dz ∂_z̄^dzbar`.
    pub fn derivative(&self, dz: &[u32], dzbar: &[u32]) -> Result<Self> {
        if dz.len() != self.dim || dzbar.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: dz.len().max(dzbar.len()) });
        }
        let mut out = Self { dim: self.dim, terms: BTreeMap::new() };
        for ((b, g), c) in &self.terms {
            let (Some(fb), Some(fg)) = (falling(b, dz), falling(g, dzbar)) else {
                continue;
            };
            let nb = b.iter().zip(dz).map(|(e, d)| e - d).collect();
            let ng = g.iter().zip(dzbar).map(|(e, d)| e - d).collect();
            out.accumulate((nb, ng), c * (fb * fg));
        }
        Ok(out)
    }

    /// `∂/∂z_j`.
    pub fn d_z(&self, j: usize) -> Self {
        self.derivative(&unit_index(self.dim, j), &vec![0; self.dim]).expect("matching dims")
    }

    /// `∂/∂z̄_j`.
    pub fn d_zbar(&self, j: usize) -> Self {
        self.derivative(&vec![0; self.dim], &unit_index(self.dim, j)).expect("matching dims")
    }

    pub fn eval(&self, z: &ComplexPoint) -> Result<Complex64> {
        z.check_dim(self.dim)?;
        Ok(self.eval_slice(z.coords()))
    }

    pub(crate) fn eval_slice(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|((b, g), c)| {
                b.iter().zip(g).zip(z).fold(*c, |acc, ((&eb, &eg), zj)| acc * zj.powu(eb) * zj.conj().powu(eg))
            })
            .sum()
    }
}

impl crate::quadrature::Symbol for PolynomialSymbol {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, w: &[Complex64]) -> Complex64 {
        self.eval_slice(w)
    }
}

fn add_index(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit_index(dim: usize, j: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[j] = 1;
    v
}

/// `Π_j e_j!/(e_j − d_j)!`, or `None` when some `d_j > e_j`.
fn falling(exps: &[u32], orders: &[u32]) -> Option<f64> {
    let mut acc = 1.0;
    for (&e, &d) in exps.iter().zip(orders) {
        if d > e {
            return None;
        }
        acc *= ((e - d + 1)..=e).map(f64::from).product::<f64>();
    }
    Some(acc)
}

fn factorial_index(beta: &[u32]) -> f64 {
    beta.iter().map(|&b| (1..=b).map(f64::from).product::<f64>()).product()
}

/// All multi-indices in `N^dim` with `|β| = order`, in lexicographic order.
pub fn multi_indices(dim: usize, order: u32) -> Vec<Vec<u32>> {
    fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            fill(pos + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        fill(0, order, &mut vec![0; dim], &mut out);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    beta: Vec<u32>,
    gamma: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    dim: usize,
    terms: Vec<TermWire>,
}

impl From<PolynomialSymbol> for PolynomialWire {
    fn from(p: PolynomialSymbol) -> Self {
        let terms =
            p.terms.into_iter().map(|((beta, gamma), c)| TermWire { beta, gamma, re: c.re, im: c.im }).collect();
        Self { dim: p.dim, terms }
    }
}

impl TryFrom<PolynomialWire> for PolynomialSymbol {
    type Error = Error;

    fn try_from(w: PolynomialWire) -> Result<Self> {
        PolynomialSymbol::from_terms(w.dim, w.terms.into_iter().map(|t| (t.beta, t.gamma, Complex64::new(t.re, t.im))))
    }
}

/// Order-`j` bidifferential term `C_j(f, g) = Σ_{|β|=j} (1/β!) ∂_z^β f · ∂_z̄^β g`.
pub fn c_term(f: &PolynomialSymbol, g: &PolynomialSymbol, j: u32) -> Result<PolynomialSymbol> {
    f.check_dim(g)?;
    let zeros = vec![0; f.dim];
    let mut out = PolynomialSymbol::zero(f.dim)?;
    for beta in multi_indices(f.dim, j) {
        let df = f.derivative(&beta, &zeros)?;
        if df.is_zero() {
            continue;
        }
        let dg = g.derivative(&zeros, &beta)?;
        let term = df.mul(&dg)?.scale(Complex64::new(factorial_index(&beta).recip(), 0.0));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Wick star product `f ⋆ g`.
///
/// Computed monomial by monomial:
/// `z^{b1} z̄^{g1} ⋆ z^{b2} z̄^{g2} = Σ_k Π_j C(b1_j, k_j)·C(g2_j, k_j)·k_j! · α^{−|k|} · z^{b1+b2−k} z̄^{g1+g2−k}`.
pub fn wick_star(f: &PolynomialSymbol, g: &PolynomialSymbol, q: QuantParams) -> Result<PolynomialSymbol> {
    f.check_dim(g)?;
    let h = q.planck();
    let mut out = PolynomialSymbol::zero(f.dim)?;
    for ((b1, g1), c1) in &f.terms {
        for ((b2, g2), c2) in &g.terms {
            let bound: Vec<u32> = b1.iter().zip(g2).map(|(x, y)| *x.min(y)).collect();
            let mut k = vec![0u32; f.dim];
            loop {
                let mut weight = 1.0;
                for j in 0..f.dim {
                    weight *= binomial(b1[j], k[j]) * binomial(g2[j], k[j]) * factorial(k[j]);
                }
                let order: u32 = k.iter().sum();
                let beta = b1.iter().zip(b2).zip(&k).map(|((x, y), kk)| x + y - kk).collect();
                let gamma = g1.iter().zip(g2).zip(&k).map(|((x, y), kk)| x + y - kk).collect();
                out.accumulate((beta, gamma), c1 * c2 * (weight * h.powi(order as i32)));
                if !next_index(&mut k, &bound) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Odometer increment of `k` within `0..=bound`; false once exhausted.
fn next_index(k: &mut [u32], bound: &[u32]) -> bool {
    for j in (0..k.len()).rev() {
        if k[j] < bound[j] {
            k[j] += 1;
            return true;
        }
        k[j] = 0;
    }
    false
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Normalization `κ` of the Poisson bracket
/// `{f, g} = κ·Σ_j (∂_{z_j} f ∂_{z̄_j} g − ∂_{z̄_j} f ∂_{z_j} g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BracketNormalization {
    /// `κ = 2π/i`, which turns `C_1(f,g) − C_1(g,f) = (i/2π){f,g}` into an
    /// identity for the Wick product.
    #[default]
    TwoPiOverI,
    /// `κ = i`.
    Conventional,
}

impl BracketNormalization {
    pub fn kappa(self) -> Complex64 {
        match self {
            Self::TwoPiOverI => Complex64::new(0.0, -2.0 * PI),
            Self::Conventional => Complex64::new(0.0, 1.0),
        }
    }
}

pub fn poisson_bracket_with(
    f: &PolynomialSymbol,
    g: &PolynomialSymbol,
    norm: BracketNormalization,
) -> Result<PolynomialSymbol> {
    f.check_dim(g)?;
    let mut out = PolynomialSymbol::zero(f.dim)?;
    for j in 0..f.dim {
        let a = f.d_z(j).mul(&g.d_zbar(j))?;
        let b = f.d_zbar(j).mul(&g.d_z(j))?;
        out = out.add(&a.sub(&b)?)?;
    }
    Ok(out.scale(norm.kappa()))
}

/// Poisson bracket with the default `κ = 2π/i`.
pub fn poisson_bracket(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    poisson_bracket_with(f, g, BracketNormalization::default())
}

/// Largest coefficient of `C_1(f,g) − C_1(g,f) − (i/2π){f,g}`.
pub fn quantization_condition_residual(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<f64> {
    let lhs = c_term(f, g, 1)?.sub(&c_term(g, f, 1)?)?;
    let rhs = poisson_bracket(f, g)?.scale(Complex64::new(0.0, 0.5 / PI));
    Ok(lhs.sub(&rhs)?.max_abs_coeff())
}

/// A polynomial whose monomials of total degree `≤ degree` are each present
/// with probability 0.6, with real and imaginary parts uniform in `[−1, 1)`.
pub fn random_polynomial<R: Rng + ?Sized>(dim: usize, degree: u32, rng: &mut R) -> Result<PolynomialSymbol> {
    let mut terms = Vec::new();
    for total in 0..=degree {
        for idx in multi_indices(2 * dim, total) {
            if rng.gen_bool(0.6) {
                let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                terms.push((idx[..dim].to_vec(), idx[dim..].to_vec(), c));
            }
        }
    }
    PolynomialSymbol::from_terms(dim, terms)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub alphas: Vec<f64>,
    /// `sup_grid |α(B_α g − g) − Δg/4|` for each α.
    pub residual_norms: Vec<f64>,
    /// Log-log slope of the residuals; `None` when some residual is zero.
    pub fitted_slope: Option<f64>,
}

/// Checks `B_α = I + Q_1/α + O(α⁻²)` with `Q_1 = Δ/4` on a Gaussian symbol.
pub fn expansion_check(g: &GaussianSymbol, alphas: &[f64], grid: &[ComplexPoint]) -> Result<ExpansionReport> {
    if alphas.len() < 3 {
        return Err(Error::param("alphas", format!("need at least 3 values, got {}", alphas.len())));
    }
    if alphas.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::param("alphas", "must be strictly increasing"));
    }
    if grid.is_empty() {
        return Err(Error::param("grid", "needs at least one point"));
    }
    let residual_norms = alphas
        .iter()
        .map(|&alpha| expansion_residual(g, QuantParams::new(alpha)?, grid))
        .collect::<Result<Vec<_>>>()?;
    let fitted_slope = loglog_slope(alphas, &residual_norms);
    Ok(ExpansionReport { alphas: alphas.to_vec(), residual_norms, fitted_slope })
}

/// `sup_grid |α(B_α g − g) − Δg/4|` for a single `α`.
pub fn expansion_residual(g: &GaussianSymbol, q: QuantParams, grid: &[ComplexPoint]) -> Result<f64> {
    let alpha = q.alpha();
    let b = g.berezin_transform(q);
    grid.iter().try_fold(0.0f64, |acc, z| {
        let r = alpha * (b.eval(z)? - g.eval(z)?) - g.quarter_laplacian(z)?;
        Ok(acc.max(r.abs()))
    })
}

/// `max_grid |B_α g − g|`, the zeroth-order deviation.
pub fn identity_deviation(g: &GaussianSymbol, q: QuantParams, grid: &[ComplexPoint]) -> Result<f64> {
    let b = g.berezin_transform(q);
    grid.iter().try_fold(0.0f64, |acc, z| Ok(acc.max((b.eval(z)? - g.eval(z)?).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn q(alpha: f64) -> QuantParams {
        QuantParams::new(alpha).unwrap()
    }

    fn z1() -> PolynomialSymbol {
        PolynomialSymbol::z(1, 0).unwrap()
    }

    fn zb1() -> PolynomialSymbol {
        PolynomialSymbol::zbar(1, 0).unwrap()
    }

    fn mono(b: u32, g: u32, v: f64) -> PolynomialSymbol {
        PolynomialSymbol::monomial(vec![b], vec![g], c(v)).unwrap()
    }

    /// Brute-force star product: Σ_β α^{−|β|}/β! ∂^β f ∂̄^β g, looping over
    /// every β up to the degree and differentiating one step at a time.
    fn star_by_derivatives(f: &PolynomialSymbol, g: &PolynomialSymbol, alpha: f64) -> PolynomialSymbol {
        let mut out = PolynomialSymbol::zero(1).unwrap();
        let mut df = f.clone();
        let mut dg = g.clone();
        let mut fact = 1.0;
        for k in 0..=f.degree() {
            if k > 0 {
                df = df.d_z(0);
                dg = dg.d_zbar(0);
                fact *= k as f64;
            }
            let term = df.mul(&dg).unwrap().scale(c(alpha.powi(-(k as i32)) / fact));
            out = out.add(&term).unwrap();
        }
        out
    }

    #[test]
    fn storage_invariants() {
        let p = PolynomialSymbol::from_terms(1, [(vec![1], vec![0], c(2.0)), (vec![1], vec![0], c(-2.0))]).unwrap();
        assert!(p.is_zero());
        assert!(PolynomialSymbol::from_terms(2, [(vec![1], vec![0, 0], c(1.0))]).is_err());
        assert!(PolynomialSymbol::zero(0).is_err());
        assert_eq!(mono(2, 1, 1.0).degree(), 3);
    }

    #[test]
    fn json_shape_and_order() {
        let p = PolynomialSymbol::from_terms(
            1,
            [(vec![1], vec![0], Complex64::new(0.5, -1.0)), (vec![0], vec![2], c(3.0))],
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"dim":1,"terms":[{"beta":[0],"gamma":[2],"re":3.0,"im":0.0},{"beta":[1],"gamma":[0],"re":0.5,"im":-1.0}]}"#
        );
        let back: PolynomialSymbol = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PolynomialSymbol>(
            r#"{"dim":2,"terms":[{"beta":[0],"gamma":[2],"re":3.0,"im":0.0}]}"#
        )
        .is_err());
    }

    #[test]
    fn wick_examples() {
        let a = 3.0;
        let s = wick_star(&z1(), &zb1(), q(a)).unwrap();
        assert_eq!(s, mono(1, 1, 1.0).add(&PolynomialSymbol::constant(1, c(1.0 / a)).unwrap()).unwrap());

        assert_eq!(wick_star(&zb1(), &z1(), q(a)).unwrap(), mono(1, 1, 1.0));

        let zz = mono(1, 1, 1.0);
        let s = wick_star(&zz, &zz, q(a)).unwrap();
        let expected = mono(2, 2, 1.0).add(&mono(1, 1, 1.0 / a)).unwrap();
        assert_eq!(s, expected);
        assert_eq!(star_by_derivatives(&zz, &zz, a), expected);
    }

    #[test]
    fn wick_matches_derivative_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_polynomial(1, 4, &mut rng).unwrap();
            let g = random_polynomial(1, 4, &mut rng).unwrap();
            let a = rng.gen_range(0.5..5.0);
            let diff = wick_star(&f, &g, q(a)).unwrap().sub(&star_by_derivatives(&f, &g, a)).unwrap();
            assert!(diff.max_abs_coeff() < 1e-13);
        }
    }

    #[test]
    fn c_term_examples() {
        let f = mono(2, 1, 1.5);
        let g = mono(0, 3, -0.5);
        assert_eq!(c_term(&f, &g, 0).unwrap(), f.mul(&g).unwrap());
        assert_eq!(c_term(&z1(), &zb1(), 1).unwrap(), PolynomialSymbol::constant(1, c(1.0)).unwrap());
        assert_eq!(
            c_term(&mono(2, 0, 1.0), &mono(0, 2, 1.0), 2).unwrap(),
            PolynomialSymbol::constant(1, c(2.0)).unwrap()
        );
        assert!(c_term(&z1(), &PolynomialSymbol::z(2, 0).unwrap(), 0).is_err());
    }

    #[test]
    fn c_terms_sum_to_star() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dim in [1, 2] {
            let f = random_polynomial(dim, 3, &mut rng).unwrap();
            let g = random_polynomial(dim, 3, &mut rng).unwrap();
            let h: f64 = 0.25;
            let mut sum = PolynomialSymbol::zero(dim).unwrap();
            for j in 0..=f.degree() {
                sum = sum.add(&c_term(&f, &g, j).unwrap().scale(c(h.powi(j as i32)))).unwrap();
            }
            let star = wick_star(&f, &g, q(1.0 / h)).unwrap();
            assert!(sum.sub(&star).unwrap().max_abs_coeff() < 1e-14);
        }
    }

    #[test]
    fn poisson_examples() {
        let b = poisson_bracket(&z1(), &zb1()).unwrap();
        let v = b.coeff(&[0], &[0]);
        assert_relative_eq!(v.im, -2.0 * PI, max_relative = 1e-15);
        assert_eq!(v.re, 0.0);
        assert!(poisson_bracket(&mono(2, 1, 0.7), &mono(2, 1, 0.7)).unwrap().is_zero());
        let b = poisson_bracket(&mono(2, 0, 1.0), &zb1()).unwrap();
        assert_relative_eq!(b.coeff(&[1], &[0]).im, -4.0 * PI, max_relative = 1e-15);
        let conv = poisson_bracket_with(&z1(), &zb1(), BracketNormalization::Conventional).unwrap();
        assert_eq!(conv.coeff(&[0], &[0]), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn condition_examples() {
        assert!(quantization_condition_residual(&z1(), &zb1()).unwrap() <= 1e-15);
        let f = mono(3, 2, 0.4);
        assert_eq!(quantization_condition_residual(&f, &f).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_polynomial(2, 3, &mut rng).unwrap();
        let g = random_polynomial(2, 3, &mut rng).unwrap();
        assert!(quantization_condition_residual(&f, &g).unwrap() <= 1e-14);
        // the conventional κ does not satisfy the identity
        let lhs = c_term(&z1(), &zb1(), 1).unwrap().sub(&c_term(&zb1(), &z1(), 1).unwrap()).unwrap();
        let conv = poisson_bracket_with(&z1(), &zb1(), BracketNormalization::Conventional)
            .unwrap()
            .scale(Complex64::new(0.0, 0.5 / PI));
        assert!(lhs.sub(&conv).unwrap().max_abs_coeff() > 0.5);
    }

    #[test]
    fn expansion_examples() {
        let grid: Vec<ComplexPoint> = [0.0, 0.3, 0.7].iter().map(|&x| ComplexPoint::real(&[x]).unwrap()).collect();
        let flat = GaussianSymbol::constant(1).unwrap();
        let r = expansion_check(&flat, &[10.0, 100.0, 1000.0], &grid).unwrap();
        assert!(r.residual_norms.iter().all(|&v| v == 0.0));
        assert_eq!(r.fitted_slope, None);

        let g = GaussianSymbol::new(1, 1.0, 1.0).unwrap();
        let r = expansion_check(&g, &[10.0, 100.0, 1000.0], &grid).unwrap();
        let slope = r.fitted_slope.unwrap();
        assert!((slope + 1.0).abs() <= 0.1, "{slope}");

        assert!(expansion_check(&g, &[10.0, 100.0], &grid).is_err());
        assert!(expansion_check(&g, &[10.0, 10.0, 100.0], &grid).is_err());
    }

    #[test]
    fn identity_deviation_bound() {
        let grid: Vec<ComplexPoint> = [0.0, 0.3, 0.7].iter().map(|&x| ComplexPoint::real(&[x]).unwrap()).collect();
        let (lambda, n) = (1.5, 1.0);
        let g = GaussianSymbol::new(1, 1.0, lambda).unwrap();
        let u2_max = (2.0 * 0.7f64).powi(2);
        for alpha in [1e2, 1e3, 1e4] {
            let dev = identity_deviation(&g, q(alpha), &grid).unwrap();
            let bound = lambda * (lambda * u2_max / 4.0 + n / 2.0) / alpha;
            assert!(dev < 1.05 * bound, "α={alpha}: {dev} vs {bound}");
        }
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(multi_indices(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(multi_indices(3, 3).len(), 10);
    }
}
