//! Verification suites behind `berezin verify`.
//!
//! Each check reduces to a non-negative deviation compared against a
//! tolerance, so the table reads the same for every suite.

use clap::ValueEnum;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bergman::{purity_index, purity_index_numeric, trace_numeric};
use crate::gaussian::{gaussian_moment, ComplexPoint, GaussianSymbol, QuantParams};
use crate::oscillator::{spectrum, uncertainty_report, uncertainty_report_numeric, GridSpec, OscillatorSpec};
use crate::quadrature::{berezin_transform_numeric, gauss_hermite, monte_carlo_transform, MonteCarloConfig};
use crate::semiclassics::{
    expansion_check, quantization_condition_residual, random_polynomial, wick_star, PolynomialSymbol,
};
use crate::Result;

use super::sweep::residual_grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Closed-form transform against quadrature.
    Theorem1,
    /// Purity index.
    #[value(alias = "trace")]
    Corollary,
    /// Heat-flow identity and first-order Taylor remainder.
    Heat,
    /// `α(B_α f − f) → Δf/4`.
    Expansion,
    /// Wick star product and the quantization condition.
    Star,
    /// Discretized oscillator spectrum.
    Spectrum,
    /// Uncertainty equality.
    Uncertainty,
    /// Gauss–Hermite exactness and Monte Carlo.
    Quadrature,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Theorem1,
        Suite::Corollary,
        Suite::Heat,
        Suite::Expansion,
        Suite::Star,
        Suite::Spectrum,
        Suite::Uncertainty,
        Suite::Quadrature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Corollary => "corollary",
            Suite::Heat => "heat",
            Suite::Expansion => "expansion",
            Suite::Star => "star",
            Suite::Spectrum => "spectrum",
            Suite::Uncertainty => "uncertainty",
            Suite::Quadrature => "quadrature",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { suite: suite.name().into(), name: name.into(), value, tolerance, passed: value <= tolerance }
    }
}

/// Runs `suite` (every suite for [`Suite::All`]) and returns the checks in
/// a fixed order.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    if suite == Suite::All {
        let mut all = Vec::new();
        for s in Suite::EACH {
            all.extend(run_suite(s, seed)?);
        }
        return Ok(all);
    }
    match suite {
        Suite::Theorem1 => transform_checks(),
        Suite::Corollary => purity_checks(),
        Suite::Heat => heat(),
        Suite::Expansion => expansion(),
        Suite::Star => star(seed),
        Suite::Spectrum => oscillator_spectrum(),
        Suite::Uncertainty => uncertainty(),
        Suite::Quadrature => quadrature(seed),
        Suite::All => unreachable!(),
    }
}

/// Human-readable table of checks.
pub fn render_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.suite.len() + c.name.len() + 1).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        let label = format!("{}/{}", c.suite, c.name);
        s.push_str(&format!(
            "{:<width$}  {:>12.3e}  <= {:>8.1e}  {}\n",
            label,
            c.value,
            c.tolerance,
            if c.passed { "PASS" } else { "FAIL" }
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    s
}

fn q(alpha: f64) -> Result<QuantParams> {
    QuantParams::new(alpha)
}

fn pt(re: f64, im: f64) -> Result<ComplexPoint> {
    ComplexPoint::new(vec![Complex64::new(re, im)])
}

/// Points where the transform is compared in one dimension.
pub fn transform_points() -> Result<Vec<ComplexPoint>> {
    [(0.0, 0.0), (0.4, 0.1), (-0.7, 0.3), (1.1, -0.5), (-1.5, 0.9)].into_iter().map(|(re, im)| pt(re, im)).collect()
}

pub const TRANSFORM_LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const TRANSFORM_ALPHAS: [f64; 4] = [0.5, 1.0, 5.0, 50.0];

fn transform_checks() -> Result<Vec<Check>> {
    let points = transform_points()?;
    let mut checks = Vec::new();
    for lambda in TRANSFORM_LAMBDAS {
        let mut worst: f64 = 0.0;
        for alpha in TRANSFORM_ALPHAS {
            let g = GaussianSymbol::new(1, 1.0, lambda)?;
            let b = g.berezin_transform(q(alpha)?);
            for z in &points {
                let numeric = berezin_transform_numeric(&g, z, q(alpha)?, 80)?;
                let closed = b.eval(z)?;
                worst = worst.max((numeric - closed).norm() / closed.abs());
            }
        }
        checks.push(Check::new(Suite::Theorem1, format!("quadrature_rel_dev_lambda={lambda}"), worst, 1e-9));
    }
    // n = 2 at a lower order
    let g = GaussianSymbol::new(2, 1.5, 0.8)?;
    let z = ComplexPoint::new(vec![Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.4)])?;
    let closed = g.berezin_transform(q(2.0)?).eval(&z)?;
    let numeric = berezin_transform_numeric(&g, &z, q(2.0)?, 24)?;
    checks.push(Check::new(Suite::Theorem1, "quadrature_rel_dev_n=2", (numeric - closed).norm() / closed, 1e-9));
    Ok(checks)
}

fn purity_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let rule80 = gauss_hermite(80)?;
    let rule32 = gauss_hermite(32)?;
    let mut worst: f64 = 0.0;
    for (n, lambda, alpha) in
        [(1, 1.0, 1.0), (1, 0.5, 2.0), (1, 2.0, 0.7), (1, 3.0, 50.0), (2, 1.0, 1.0), (2, 0.5, 3.0)]
    {
        let rule = if n == 1 { &rule80 } else { &rule32 };
        let closed = purity_index(lambda, q(alpha)?, n)?;
        let numeric = purity_index_numeric(lambda, q(alpha)?, n, rule)?;
        worst = worst
            .max((numeric.normalized_trace - closed.normalized_trace).abs())
            .max((numeric.raw_trace - closed.raw_trace).abs());
    }
    checks.push(Check::new(Suite::Corollary, "quadrature_abs_dev", worst, 1e-9));
    for n in 1..=3usize {
        let v = purity_index(1.0, q(1.0)?, n)?.normalized_trace;
        let exact = 0.5f64.powi(n as i32);
        checks.push(Check::new(Suite::Corollary, format!("exact_half_power_n={n}"), (v - exact).abs(), 0.0));
    }
    let limit = purity_index(1.0, q(1e6)?, 1)?.normalized_trace;
    checks.push(Check::new(Suite::Corollary, "classical_limit_alpha=1e6", (1.0 - limit).abs(), 2e-6));
    // unit symbol: the trace of the quantized constant equals 1
    let one = trace_numeric(&GaussianSymbol::constant(1)?, q(3.0)?, &rule80)?;
    checks.push(Check::new(Suite::Corollary, "trace_of_constant", (one - 1.0).abs(), 1e-12));
    Ok(checks)
}

/// Distance in units in the last place between two finite floats of the
/// same sign.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if a.is_sign_negative() != b.is_sign_negative() {
        return u64::MAX;
    }
    a.to_bits().abs_diff(b.to_bits())
}

pub const HEAT_LAMBDAS: [f64; 3] = [0.3, 1.0, 4.0];
pub const HEAT_ALPHAS: [f64; 3] = [0.5, 2.0, 40.0];
pub const HEAT_DIMS: [usize; 2] = [1, 2];

/// Largest ulp distance between heat flow and the closed transform, over
/// amplitude and compression, on the standard grid.
pub fn heat_ulp_gap() -> Result<u64> {
    let mut worst = 0;
    for lambda in HEAT_LAMBDAS {
        for alpha in HEAT_ALPHAS {
            for n in HEAT_DIMS {
                let g = GaussianSymbol::new(n, 1.0, lambda)?;
                let b = g.berezin_transform(q(alpha)?);
                let h = g.heat_evolve(q(alpha)?);
                worst = worst
                    .max(ulp_distance(b.amplitude(), h.amplitude()))
                    .max(ulp_distance(b.compression(), h.compression()));
            }
        }
    }
    Ok(worst)
}

pub const RATE_ALPHAS: [f64; 3] = [10.0, 100.0, 1000.0];

/// Log-log slope of the sup-grid first-order Taylor remainder.
pub fn taylor_slope(n: usize) -> Result<Option<f64>> {
    let g = GaussianSymbol::new(n, 1.0, 1.0)?;
    let grid = residual_grid(n)?;
    let sups = RATE_ALPHAS
        .iter()
        .map(|&a| {
            let qa = q(a)?;
            grid.iter().try_fold(0.0f64, |acc, z| Ok(acc.max(g.taylor_remainder(qa, z)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::convergence::loglog_slope(&RATE_ALPHAS, &sups))
}

fn slope_dev(slope: Option<f64>, target: f64) -> f64 {
    slope.map_or(f64::INFINITY, |s| (s - target).abs())
}

fn heat() -> Result<Vec<Check>> {
    let mut checks = vec![Check::new(Suite::Heat, "heat_vs_transform_ulps", heat_ulp_gap()? as f64, 1.0)];
    for n in [1, 2] {
        checks.push(Check::new(Suite::Heat, format!("taylor_slope_dev_n={n}"), slope_dev(taylor_slope(n)?, -2.0), 0.1));
    }
    let g = GaussianSymbol::new(1, 1.0, 1.3)?;
    let two_step = g.transform_compose(q(2.0)?, q(3.0)?);
    let one_step = g.heat_flow(0.5 + 1.0 / 3.0)?;
    checks.push(Check::new(
        Suite::Heat,
        "semigroup_compression_rel_dev",
        (two_step.compression() - one_step.compression()).abs() / one_step.compression(),
        1e-14,
    ));
    Ok(checks)
}

fn expansion() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [1, 2] {
        let g = GaussianSymbol::new(n, 1.0, 1.0)?;
        let report = expansion_check(&g, &RATE_ALPHAS, &residual_grid(n)?)?;
        checks.push(Check::new(
            Suite::Expansion,
            format!("residual_slope_dev_n={n}"),
            slope_dev(report.fitted_slope, -1.0),
            0.1,
        ));
    }
    Ok(checks)
}

pub const STAR_PAIRS: usize = 100;
pub const STAR_TRIPLES: usize = 20;

fn star(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 0..STAR_PAIRS {
        let dim = 1 + k % 2;
        let f = random_polynomial(dim, 3, &mut rng)?;
        let g = random_polynomial(dim, 3, &mut rng)?;
        worst = worst.max(quantization_condition_residual(&f, &g)?);
    }
    let mut checks = vec![Check::new(Suite::Star, "quantization_condition", worst, 1e-14)];

    let qa = q(2.5)?;
    let mut assoc: f64 = 0.0;
    for k in 0..STAR_TRIPLES {
        let dim = 1 + k % 2;
        let f = random_polynomial(dim, 2, &mut rng)?;
        let g = random_polynomial(dim, 2, &mut rng)?;
        let h = random_polynomial(dim, 2, &mut rng)?;
        let left = wick_star(&wick_star(&f, &g, qa)?, &h, qa)?;
        let right = wick_star(&f, &wick_star(&g, &h, qa)?, qa)?;
        assoc = assoc.max(left.sub(&right)?.max_abs_coeff());
    }
    checks.push(Check::new(Suite::Star, "associativity", assoc, 1e-12));

    let mut ccr: f64 = 0.0;
    for alpha in [0.5, 1.0, 3.0, 7.0] {
        let qa = q(alpha)?;
        let z = PolynomialSymbol::z(1, 0)?;
        let zb = PolynomialSymbol::zbar(1, 0)?;
        let comm = wick_star(&z, &zb, qa)?.sub(&wick_star(&zb, &z, qa)?)?;
        let expected = PolynomialSymbol::constant(1, Complex64::new(1.0 / alpha, 0.0))?;
        ccr = ccr.max(comm.sub(&expected)?.max_abs_coeff());
    }
    checks.push(Check::new(Suite::Star, "canonical_commutator", ccr, 0.0));
    Ok(checks)
}

pub const SPECTRUM_LEVELS: usize = 4;

/// Largest deviation of the lowest levels from `2j + h`, and the ratio of
/// the errors on the grid and on the grid with half the spacing.
pub fn spectrum_errors(h: f64, grid: &GridSpec) -> Result<(f64, f64)> {
    let spec = OscillatorSpec::new(1, h)?;
    let err = |g: &GridSpec| -> Result<f64> {
        let s = spectrum(&spec, g, SPECTRUM_LEVELS)?;
        Ok(s.eigenvalues.iter().enumerate().map(|(j, e)| (e - spec.exact_level(j)).abs()).fold(0.0, f64::max))
    };
    let coarse = err(grid)?;
    let fine = err(&grid.refined())?;
    Ok((coarse, coarse / fine))
}

fn oscillator_spectrum() -> Result<Vec<Check>> {
    let grid = GridSpec::new(10.0, 2000)?;
    let mut checks = Vec::new();
    for h in [0.5, 1.0] {
        let (err, ratio) = spectrum_errors(h, &grid)?;
        checks.push(Check::new(Suite::Spectrum, format!("levels_dev_h={h}"), err, 1e-3));
        checks.push(Check::new(Suite::Spectrum, format!("convergence_ratio_dev_h={h}"), (ratio - 4.0).abs(), 0.5));
    }
    Ok(checks)
}

pub const UNCERTAINTY_LAMBDAS: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];
pub const UNCERTAINTY_AMPLITUDES: [f64; 3] = [0.5, 1.0, 3.0];

fn uncertainty() -> Result<Vec<Check>> {
    let rule = gauss_hermite(80)?;
    let (mut closed, mut numeric): (f64, f64) = (0.0, 0.0);
    for lambda in UNCERTAINTY_LAMBDAS {
        for k in UNCERTAINTY_AMPLITUDES {
            closed = closed.max((uncertainty_report(lambda, k)?.ratio - 1.0).abs());
            numeric = numeric.max((uncertainty_report_numeric(lambda, k, &rule)?.ratio - 1.0).abs());
        }
    }
    Ok(vec![
        Check::new(Suite::Uncertainty, "closed_ratio_dev", closed, 1e-12),
        Check::new(Suite::Uncertainty, "quadrature_ratio_dev", numeric, 1e-8),
    ])
}

pub const EXACTNESS_ORDERS: [usize; 4] = [2, 5, 10, 40];

/// Worst error of the order-`m` rule on `t^k`, `k ≤ 2m − 1`, against the
/// moment formula: relative for even `k`, absolute against the size of
/// the largest term for odd `k`.
pub fn exactness_error(m: usize) -> Result<f64> {
    let rule = gauss_hermite(m)?;
    let mut worst: f64 = 0.0;
    for k in 0..(2 * m as u32) {
        let got = rule.apply(|t| t.powi(k as i32));
        let err = if k % 2 == 0 {
            let exact = gaussian_moment(k, 1.0)?;
            (got - exact).abs() / exact
        } else {
            let scale: f64 = rule.nodes().iter().zip(rule.weights()).map(|(t, w)| (w * t.powi(k as i32)).abs()).sum();
            got.abs() / scale
        };
        worst = worst.max(err);
    }
    Ok(worst)
}

pub const MC_RUNS: usize = 100;
pub const MC_SAMPLES: usize = 4_000;

/// Number of the [`MC_RUNS`] seeded estimates of `B_α g` that land within
/// four standard errors of the closed form.
pub fn monte_carlo_hits(seed: u64) -> Result<usize> {
    let g = GaussianSymbol::new(1, 1.0, 1.0)?;
    let qa = q(1.5)?;
    let z = pt(0.3, 0.2)?;
    let exact = g.berezin_transform(qa).eval(&z)?;
    let mut hits = 0;
    for k in 0..MC_RUNS as u64 {
        let cfg = MonteCarloConfig::new(MC_SAMPLES, seed.wrapping_mul(1_000).wrapping_add(k))?;
        let est = monte_carlo_transform(&g, &z, qa, cfg)?;
        if (est.estimate.re - exact).abs() <= 4.0 * est.stderr {
            hits += 1;
        }
    }
    Ok(hits)
}

fn quadrature(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in EXACTNESS_ORDERS {
        checks.push(Check::new(Suite::Quadrature, format!("exactness_m={m}"), exactness_error(m)?, 1e-12));
    }
    let misses = MC_RUNS - monte_carlo_hits(seed)?;
    checks.push(Check::new(Suite::Quadrature, "monte_carlo_misses", misses as f64, 1.0));
    Ok(checks)
}
