// The transform as a heat flow: composition, the first-order expansion
// and its remainder.
//
// cargo run --example heat_semigroup

use berezin::cli::sweep::residual_grid;
use berezin::convergence::loglog_slope;
use berezin::semiclassics::expansion_check;
use berezin::{GaussianSymbol, QuantParams};

pub fn run_example() -> berezin::Result<()> {
    let f = GaussianSymbol::new(1, 1.0, 1.3)?;
    let (q1, q2) = (QuantParams::new(2.0)?, QuantParams::new(3.0)?);
    let twice = f.transform_compose(q1, q2);
    let once = f.heat_flow(1.0 / 2.0 + 1.0 / 3.0)?;
    println!("B_3 B_2 f: lambda' = {:.15}", twice.compression());
    println!("heat t=5/6: lambda' = {:.15}", once.compression());

    let b = f.berezin_transform(q1);
    let h = f.heat_evolve(q1);
    println!(
        "closed vs heat route: A' {} / {}, lambda' {} / {}",
        b.amplitude(),
        h.amplitude(),
        b.compression(),
        h.compression()
    );

    let alphas = [10.0, 100.0, 1000.0];
    let grid = residual_grid(1)?;
    let report = expansion_check(&f, &alphas, &grid)?;
    println!("alpha(B f - f) - Δf/4: {:?}, slope {:?}", report.residual_norms, report.fitted_slope);

    let remainders = alphas
        .iter()
        .map(|&a| {
            let q = QuantParams::new(a)?;
            grid.iter().try_fold(0.0f64, |m, z| Ok(m.max(f.taylor_remainder(q, z)?)))
        })
        .collect::<berezin::Result<Vec<_>>>()?;
    println!("first-order remainder: {remainders:?}, slope {:?}", loglog_slope(&alphas, &remainders));
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
