//! Parameter sweeps and their CSV form.

use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bergman::purity_index;
use crate::convergence::loglog_slope;
use crate::gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
use crate::oscillator::uncertainty_report;
use crate::semiclassics::expansion_residual;
use crate::{Error, Result};

/// Largest number of rows a sweep will produce.
pub const MAX_ROWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    /// `(α/(α+3λ))^{n/2}`.
    NormalizedTrace,
    /// `Tr((B_α f)²)` of the unit Gaussian.
    RawTrace,
    /// Transformed compression `λ' = αλ/(α+λ)`.
    Compression,
    /// Transformed amplitude `(α/(α+λ))^{n/2}` of the unit Gaussian.
    Amplitude,
    /// `sup_grid |α(B_α f − f) − Δf/4|`.
    ExpansionResidual,
    /// `sup_grid |B_α f − (f + Δf/(4α))|`.
    TaylorRemainder,
    /// `σ²(x)σ²(p) / (¼(−i[x,p]ψ,ψ)²)`; ignores `α` and `n`.
    UncertaintyRatio,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::NormalizedTrace => "normalized_trace",
            Quantity::RawTrace => "raw_trace",
            Quantity::Compression => "compression",
            Quantity::Amplitude => "amplitude",
            Quantity::ExpansionResidual => "expansion_residual",
            Quantity::TaylorRemainder => "taylor_remainder",
            Quantity::UncertaintyRatio => "uncertainty_ratio",
        }
    }

    fn has_rate(self) -> bool {
        matches!(self, Quantity::ExpansionResidual | Quantity::TaylorRemainder)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Alpha,
    Lambda,
}

/// A finished sweep: one row per grid value, in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Log-log slope of the output against the swept parameter, for the
    /// residual quantities.
    pub fitted_slope: Option<f64>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn output(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[r.len() - 1]).collect()
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

/// Points on which the residual quantities take their supremum: the same
/// complex value repeated in each coordinate.
pub fn residual_grid(n: usize) -> Result<Vec<ComplexPoint>> {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, 0.2),
        Complex64::new(0.7, -0.4),
        Complex64::new(1.2, 0.0),
        Complex64::new(-1.6, 0.5),
    ]
    .into_iter()
    .map(|c| ComplexPoint::new(vec![c; n]))
    .collect()
}

/// `count` values `10^start … 10^stop`, evenly spaced in the exponent.
pub fn logspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite()) {
        return Err(Error::param("logspace", "bounds must be finite"));
    }
    match count {
        0 => Err(Error::param("logspace", "count must be positive")),
        1 => Ok(vec![10f64.powf(start)]),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|k| if k + 1 == count { stop } else { start + k as f64 * step })
                .map(|e| 10f64.powf(e))
                .collect())
        }
    }
}

/// Parses `--logspace start,stop,count`.
pub fn parse_logspace(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(Error::param("logspace", format!("expected `start,stop,count`, got `{s}`")));
    };
    let bad = |what: &str| Error::param("logspace", format!("bad {what} in `{s}`"));
    let start: f64 = start.parse().map_err(|_| bad("start"))?;
    let stop: f64 = stop.parse().map_err(|_| bad("stop"))?;
    let count: usize = count.parse().map_err(|_| bad("count"))?;
    if count > MAX_ROWS {
        return Err(Error::param("logspace", format!("at most {MAX_ROWS} points")));
    }
    logspace(start, stop, count)
}

/// Parses `--values v1,v2,…`.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    let values = s
        .split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::param("values", format!("bad number `{v}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() > MAX_ROWS {
        return Err(Error::param("values", format!("at most {MAX_ROWS} points")));
    }
    Ok(values)
}

fn evaluate(quantity: Quantity, n: usize, lambda: f64, alpha: f64) -> Result<f64> {
    let q = QuantParams::new(alpha)?;
    let unit = || GaussianSymbol::new(n, 1.0, lambda);
    Ok(match quantity {
        Quantity::NormalizedTrace => purity_index(lambda, q, n)?.normalized_trace,
        Quantity::RawTrace => purity_index(lambda, q, n)?.raw_trace,
        Quantity::Compression => unit()?.berezin_transform(q).compression(),
        Quantity::Amplitude => unit()?.berezin_transform(q).amplitude(),
        Quantity::ExpansionResidual => expansion_residual(&unit()?, q, &residual_grid(n)?)?,
        Quantity::TaylorRemainder => {
            let g = unit()?;
            residual_grid(n)?.iter().try_fold(0.0f64, |acc, z| Ok::<_, Error>(acc.max(g.taylor_remainder(q, z)?)))?
        }
        Quantity::UncertaintyRatio => uncertainty_report(lambda, 1.0)?.ratio,
    })
}

/// Evaluates `quantity` at each value of `axis`, the other parameters held
/// fixed. Columns are `n, lambda, alpha, <quantity>`.
pub fn run_sweep(
    quantity: Quantity,
    axis: Axis,
    values: &[f64],
    n: usize,
    lambda: f64,
    alpha: f64,
) -> Result<SweepTable> {
    if values.is_empty() {
        return Err(Error::param("values", "sweep grid is empty"));
    }
    let rows = values
        .iter()
        .map(|&v| {
            let (l, a) = match axis {
                Axis::Alpha => (lambda, v),
                Axis::Lambda => (v, alpha),
            };
            Ok(vec![n as f64, l, a, evaluate(quantity, n, l, a)?])
        })
        .collect::<Result<Vec<_>>>()?;
    let fitted_slope = if quantity.has_rate() {
        let ys: Vec<f64> = rows.iter().map(|r| r[3]).collect();
        loglog_slope(values, &ys)
    } else {
        None
    };
    Ok(SweepTable {
        columns: ["n", "lambda", "alpha", quantity.column()].map(String::from).to_vec(),
        rows,
        fitted_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logspace_endpoints() {
        let v = logspace(0.0, 6.0, 13).unwrap();
        assert_eq!(v.len(), 13);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[12], 1e6);
        assert!((v[1] - 10f64.sqrt()).abs() < 1e-12);
        assert_eq!(parse_logspace("1,3,3").unwrap(), vec![10.0, 100.0, 1000.0]);
        assert!(parse_logspace("1,3").is_err());
        assert!(parse_values("1,x").is_err());
    }

    #[test]
    fn trace_sweep_tends_to_one() {
        let t =
            run_sweep(Quantity::NormalizedTrace, Axis::Alpha, &logspace(0.0, 6.0, 13).unwrap(), 1, 1.0, 1.0).unwrap();
        assert_eq!(t.rows.len(), 13);
        let out = t.output();
        assert_eq!(out[0], 0.5);
        assert!((out[12] - 1.0).abs() < 2e-6);
        assert!(out.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn compression_at_zero_lambda() {
        let t = run_sweep(Quantity::Compression, Axis::Lambda, &[0.0], 1, 1.0, 3.0).unwrap();
        assert_eq!(t.output(), vec![0.0]);
        assert_eq!(t.to_csv(), "n,lambda,alpha,compression\n1.0,0.0,3.0,0.0\n");
    }

    #[test]
    fn residual_slopes() {
        let alphas = [10.0, 100.0, 1000.0];
        let e = run_sweep(Quantity::ExpansionResidual, Axis::Alpha, &alphas, 1, 1.0, 1.0).unwrap();
        assert!((e.fitted_slope.unwrap() + 1.0).abs() < 0.1);
        let t = run_sweep(Quantity::TaylorRemainder, Axis::Alpha, &alphas, 2, 1.0, 1.0).unwrap();
        assert!((t.fitted_slope.unwrap() + 2.0).abs() < 0.1);
    }
}
