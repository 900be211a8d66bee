// Finite-difference spectrum of the quantized harmonic oscillator.
//
// cargo run --release --example oscillator_spectrum

use berezin::oscillator::{
    commutator_residual, ground_state_residual, ladder_identity_residual, spectrum, GridSpec, MomentumConvention,
    OscillatorSpec,
};

pub fn run_example() -> berezin::Result<()> {
    let grid = GridSpec::new(10.0, 2000)?;
    for h in [0.5, 1.0] {
        let spec = OscillatorSpec::new(1, h)?;
        let coarse = spectrum(&spec, &grid, 4)?;
        let fine = spectrum(&spec, &grid.refined(), 4)?;
        println!("h = {h}");
        for (j, (c, f)) in coarse.eigenvalues.iter().zip(&fine.eigenvalues).enumerate() {
            let exact = spec.exact_level(j);
            println!("  E_{j} = {c:.8}  (exact {exact}, error ratio {:.3})", (c - exact) / (f - exact));
        }
        println!("  ground state residual {:.2e}", ground_state_residual(&spec, &grid)?);
        let states: [&dyn Fn(f64) -> f64; 2] = [&|x: f64| (-0.5 * x * x).exp(), &|x: f64| x * (-0.5 * x * x).exp()];
        println!("  H - (2 zbar z + h) residual {:.2e}", ladder_identity_residual(&spec, &states, &grid)?);
    }

    let scaled = OscillatorSpec::with_convention(1, 0.5, MomentumConvention::Scaled)?;
    println!("p = -ih d/dx, h = 0.5: {:?}", spectrum(&scaled, &grid, 3)?.eigenvalues);

    let two = OscillatorSpec::new(2, 1.0)?;
    println!("n = 2, h = 1: {:?}", spectrum(&two, &grid, 4)?.eigenvalues);
    println!("[x, p] - ih residual {:.2e}", commutator_residual(&grid, 1.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
