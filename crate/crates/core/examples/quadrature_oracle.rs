// Gauss–Hermite rules and the Monte-Carlo estimator used as oracles.
//
// cargo run --example quadrature_oracle

use berezin::gaussian::gaussian_moment;
use berezin::quadrature::{gauss_hermite, monte_carlo_transform, MonteCarloConfig};
use berezin::{Complex64, ComplexPoint, GaussianSymbol, QuantParams};

pub fn run_example() -> berezin::Result<()> {
    let rule = gauss_hermite(5)?;
    println!("m = 5 nodes   {:?}", rule.nodes());
    println!("m = 5 weights {:?}", rule.weights());
    for k in [0u32, 2, 4, 6, 8] {
        let got = rule.apply(|t| t.powi(k as i32));
        println!("  ∫ t^{k} e^(-t²) = {got:.15} (moment formula {:.15})", gaussian_moment(k, 1.0)?);
    }

    let f = GaussianSymbol::new(1, 1.0, 1.0)?;
    let q = QuantParams::new(1.5)?;
    let z = ComplexPoint::new(vec![Complex64::new(0.3, 0.2)])?;
    let exact = f.berezin_transform(q).eval(&z)?;
    for seed in 0..5 {
        let est = monte_carlo_transform(&f, &z, q, MonteCarloConfig::new(20_000, seed)?)?;
        println!(
            "seed {seed}: {:.5} ± {:.5} (closed form {exact:.5}, {:.2} stderr)",
            est.estimate.re,
            est.stderr,
            (est.estimate.re - exact) / est.stderr
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
