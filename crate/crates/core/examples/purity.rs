// Purity index of the transformed Gaussian and its classical limit.
//
// cargo run --example purity

use berezin::bergman::{purity_index, purity_index_numeric};
use berezin::cli::sweep::{logspace, run_sweep, Axis, Quantity};
use berezin::quadrature::gauss_hermite;
use berezin::QuantParams;

pub fn run_example() -> berezin::Result<()> {
    for n in 1..=3 {
        let r = purity_index(1.0, QuantParams::new(1.0)?, n)?;
        println!("n = {n}, alpha = lambda = 1: Tr = {}", r.normalized_trace);
    }

    let rule = gauss_hermite(80)?;
    let q = QuantParams::new(2.0)?;
    let closed = purity_index(0.5, q, 1)?;
    let numeric = purity_index_numeric(0.5, q, 1, &rule)?;
    println!(
        "alpha = 2, lambda = 0.5: closed {:.15}, quadrature {:.15}",
        closed.normalized_trace, numeric.normalized_trace
    );

    let alphas = logspace(0.0, 6.0, 13)?;
    let table = run_sweep(Quantity::NormalizedTrace, Axis::Alpha, &alphas, 1, 1.0, 1.0)?;
    print!("{}", table.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
