// Closed-form Berezin transform of a Gaussian next to the direct
// quadrature of the defining integral.
//
// cargo run --example berezin_transform

use berezin::quadrature::berezin_transform_numeric;
use berezin::{Complex64, ComplexPoint, GaussianSymbol, QuantParams};

pub fn run_example() -> berezin::Result<()> {
    let f = GaussianSymbol::new(1, 1.0, 2.0)?;
    println!("f = {:.3}·exp(-{:.3}·Σ x_j²)", f.amplitude(), f.compression());
    println!("{:>6} {:>10} {:>10} {:>12}", "alpha", "A'", "lambda'", "max |dev|");
    for alpha in [0.5, 1.0, 5.0, 50.0] {
        let q = QuantParams::new(alpha)?;
        let b = f.berezin_transform(q);
        let mut worst: f64 = 0.0;
        for (re, im) in [(0.0, 0.0), (0.4, 0.1), (-1.2, 0.7)] {
            let z = ComplexPoint::new(vec![Complex64::new(re, im)])?;
            let numeric = berezin_transform_numeric(&f, &z, q, 80)?;
            worst = worst.max((numeric - b.eval(&z)?).norm());
        }
        println!("{alpha:>6} {:>10.6} {:>10.6} {worst:>12.2e}", b.amplitude(), b.compression());
    }

    // two complex dimensions, lower order per axis
    let g = GaussianSymbol::new(2, 1.5, 0.8)?;
    let q = QuantParams::new(2.0)?;
    let z = ComplexPoint::new(vec![Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.4)])?;
    let closed = g.berezin_transform(q).eval(&z)?;
    let numeric = berezin_transform_numeric(&g, &z, q, 24)?;
    println!("n = 2: closed {closed:.15}, quadrature {:.15}", numeric.re);
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
