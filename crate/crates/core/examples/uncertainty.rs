// The quantized Gaussian saturates the uncertainty relation for every
// compression.
//
// cargo run --example uncertainty

use berezin::oscillator::{uncertainty_report, uncertainty_report_moments, uncertainty_report_numeric};
use berezin::quadrature::gauss_hermite;

pub fn run_example() -> berezin::Result<()> {
    let rule = gauss_hermite(80)?;
    println!("{:>6} {:>4} {:>12} {:>12} {:>20} {:>20}", "lambda", "K", "var x", "var p", "ratio", "quadrature ratio");
    for lambda in [0.1, 0.5, 1.0, 2.0, 10.0] {
        for k in [0.5, 3.0] {
            let r = uncertainty_report(lambda, k)?;
            let m = uncertainty_report_moments(lambda, k)?;
            let qd = uncertainty_report_numeric(lambda, k, &rule)?;
            assert!((m.ratio - r.ratio).abs() < 1e-12);
            println!(
                "{lambda:>6} {k:>4} {:>12.6} {:>12.6} {:>20.17} {:>20.17}",
                r.normalized_var_x, r.normalized_var_p, r.ratio, qd.ratio
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
