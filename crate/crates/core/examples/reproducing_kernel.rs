// Weight, reproducing kernel and the reproducing property on polynomials.
//
// cargo run --example reproducing_kernel

use berezin::bergman::{kernel, reproducing_residual, weight, WeightSpec};
use berezin::quadrature::gauss_hermite;
use berezin::semiclassics::PolynomialSymbol;
use berezin::{Complex64, ComplexPoint, QuantParams};

pub fn run_example() -> berezin::Result<()> {
    let q = QuantParams::new(1.0)?;
    let rule = gauss_hermite(40)?;
    println!("total mass n=1: {}", WeightSpec::new(1, 1.0)?.total_mass(&rule)?);

    let z = ComplexPoint::new(vec![Complex64::new(0.5, -0.25)])?;
    let w = ComplexPoint::new(vec![Complex64::new(-0.3, 0.8)])?;
    println!("K(z, w) = {}", kernel(&z, &w, q)?);
    println!("conj K(w, z) = {}", kernel(&w, &z, q)?.conj());
    println!("rho(z) = {}", weight(&z, q));

    let zz = PolynomialSymbol::z(1, 0)?;
    let p = zz.mul(&zz)?.mul(&zz)?.add(&PolynomialSymbol::constant(1, Complex64::new(2.0, -1.0))?)?;
    println!("reproducing residual for z³ + (2 - i): {:.2e}", reproducing_residual(&p, &z, q, &rule)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
