use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::sweep::{parse_logspace, parse_values, run_sweep, Axis, Quantity};
use super::verify::{render_table, run_suite, Suite};
use super::{parse_point, Command, Failure, Output, RunRecord, CONTRACT_TOLERANCE, SEED_ENV, UNCERTAINTY_TOLERANCE};
use crate::bergman::{purity_index, purity_index_numeric};
use crate::gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
use crate::oscillator::{uncertainty_report, uncertainty_report_numeric};
use crate::quadrature::{berezin_transform_numeric, gauss_hermite, MAX_NUMERIC_DIM};

type Params = BTreeMap<String, Value>;

fn params<const N: usize>(pairs: [(&str, Value); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

/// `true` also for NaN.
fn exceeds(value: f64, tolerance: f64) -> bool {
    value.is_nan() || value > tolerance
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub(crate) fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Transform { n, lambda, alpha, amplitude, numeric, at } => {
            transform(n, lambda, alpha, amplitude, numeric, at.as_deref())
        }
        Command::Trace { n, lambda, alpha, order } => trace(n, lambda, alpha, order),
        Command::Uncertainty { lambda, amplitude, order } => uncertainty(lambda, amplitude, order),
        Command::Sweep { quantity, over, values, logspace, n, lambda, alpha, out, csv } => {
            sweep(quantity, over, values.as_deref(), logspace.as_deref(), n, lambda, alpha, out, csv)
        }
        Command::Verify { suite, seed } => verify(suite, seed),
    }
}

fn transform(
    n: usize,
    lambda: f64,
    alpha: f64,
    amplitude: f64,
    numeric: Option<usize>,
    at: Option<&str>,
) -> Result<Output, Failure> {
    let q = QuantParams::new(alpha)?;
    let g = GaussianSymbol::new(n, amplitude, lambda)?;
    let b = g.berezin_transform(q);
    let mut p =
        params([("n", json!(n)), ("lambda", json!(lambda)), ("alpha", json!(alpha)), ("amplitude", json!(amplitude))]);
    let mut results = json!({
        "amplitude": b.amplitude(),
        "compression": b.compression(),
        "amplitude_ratio": b.amplitude() / g.amplitude(),
    });
    let Some(m) = numeric else {
        if at.is_some() {
            return Err(usage("--at requires --numeric"));
        }
        return Ok(Output::Record(RunRecord::new("transform", p, results, None)));
    };
    if n > MAX_NUMERIC_DIM {
        return Err(usage(format!("--numeric supports n ≤ {MAX_NUMERIC_DIM}")));
    }
    let z = match at {
        Some(s) => parse_point(s)?,
        None => ComplexPoint::origin(n),
    };
    if z.dim() != n {
        return Err(usage(format!("--at has {} coordinates, expected {n}", z.dim())));
    }
    let closed = b.eval(&z)?;
    let value = berezin_transform_numeric(&g, &z, q, m)?;
    let deviation = (value - closed).norm();
    p.insert("numeric".into(), json!(m));
    p.insert("at".into(), json!(z.coords().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()));
    results["closed_value"] = json!(closed);
    results["numeric_value"] = json!([value.re, value.im]);
    results["deviation"] = json!(deviation);
    let rec = RunRecord::new("transform", p, results, None);
    if exceeds(deviation, CONTRACT_TOLERANCE) {
        return Err(Failure::Contract(Box::new(rec), format!("quadrature deviates by {deviation:e}")));
    }
    Ok(Output::Record(rec))
}

fn trace(n: usize, lambda: f64, alpha: f64, order: Option<usize>) -> Result<Output, Failure> {
    let q = QuantParams::new(alpha)?;
    let closed = purity_index(lambda, q, n)?;
    let order = order.unwrap_or(if n == 1 { 80 } else { 32 });
    let p = params([("n", json!(n)), ("lambda", json!(lambda)), ("alpha", json!(alpha)), ("order", json!(order))]);
    let mut results = json!({
        "normalized_trace": closed.normalized_trace,
        "raw_trace": closed.raw_trace,
    });
    if n > MAX_NUMERIC_DIM {
        results["cross_check"] = Value::Null;
        return Ok(Output::Record(RunRecord::new("trace", p, results, None)));
    }
    let rule = gauss_hermite(order)?;
    let numeric = purity_index_numeric(lambda, q, n, &rule)?;
    let deviation =
        (numeric.normalized_trace - closed.normalized_trace).abs().max((numeric.raw_trace - closed.raw_trace).abs());
    results["cross_check"] = json!({
        "normalized_trace": numeric.normalized_trace,
        "raw_trace": numeric.raw_trace,
        "deviation": deviation,
    });
    let rec = RunRecord::new("trace", p, results, None);
    if exceeds(deviation, CONTRACT_TOLERANCE) {
        return Err(Failure::Contract(Box::new(rec), format!("quadrature trace deviates by {deviation:e}")));
    }
    Ok(Output::Record(rec))
}

fn uncertainty(lambda: f64, amplitude: f64, order: usize) -> Result<Output, Failure> {
    let report = uncertainty_report(lambda, amplitude)?;
    let numeric = uncertainty_report_numeric(lambda, amplitude, &gauss_hermite(order)?)?;
    let p = params([("lambda", json!(lambda)), ("K", json!(amplitude)), ("order", json!(order))]);
    let mut results = serde_json::to_value(report).map_err(|e| Failure::Internal(e.to_string()))?;
    results["numeric_ratio"] = json!(numeric.ratio);
    let rec = RunRecord::new("uncertainty", p, results, None);
    let dev = (report.ratio - 1.0).abs();
    if exceeds(dev, UNCERTAINTY_TOLERANCE) {
        return Err(Failure::Contract(Box::new(rec), format!("|ratio − 1| = {dev:e}")));
    }
    let dev = (numeric.ratio - 1.0).abs();
    if exceeds(dev, CONTRACT_TOLERANCE) {
        return Err(Failure::Contract(Box::new(rec), format!("quadrature |ratio − 1| = {dev:e}")));
    }
    Ok(Output::Record(rec))
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    quantity: Quantity,
    over: Axis,
    values: Option<&str>,
    logspace: Option<&str>,
    n: usize,
    lambda: f64,
    alpha: f64,
    out: Option<std::path::PathBuf>,
    csv: bool,
) -> Result<Output, Failure> {
    let grid = match (values, logspace) {
        (Some(v), None) => parse_values(v)?,
        (None, Some(l)) => parse_logspace(l)?,
        _ => return Err(usage("give exactly one of --values and --logspace")),
    };
    let table = run_sweep(quantity, over, &grid, n, lambda, alpha)?;
    let text = table.to_csv();
    let mut p = params([
        ("quantity", json!(quantity)),
        ("over", json!(over)),
        ("grid", json!(grid)),
        ("n", json!(n)),
        ("lambda", json!(lambda)),
        ("alpha", json!(alpha)),
    ]);
    if let Some(path) = &out {
        std::fs::write(path, &text).map_err(|e| Failure::Internal(format!("writing {}: {e}", path.display())))?;
        p.insert("out".into(), json!(path.display().to_string()));
    }
    let results = serde_json::to_value(&table).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(if csv { Output::Csv(text) } else { Output::Record(RunRecord::new("sweep", p, results, None)) })
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| usage(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn verify(suite: Suite, seed: Option<u64>) -> Result<Output, Failure> {
    let seed = match seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let checks = run_suite(suite, seed)?;
    let passed = checks.iter().all(|c| c.passed);
    let table = render_table(&checks);
    let results = json!({ "all_passed": passed, "checks": checks });
    let rec = RunRecord::new("verify", params([("suite", json!(suite))]), results, Some(seed));
    Ok(Output::Table(rec, table, passed))
}
