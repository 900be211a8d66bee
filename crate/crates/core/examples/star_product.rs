// Wick star product of polynomial symbols.
//
// cargo run --example star_product

use berezin::semiclassics::{
    c_term, poisson_bracket, quantization_condition_residual, random_polynomial, wick_star, PolynomialSymbol,
};
use berezin::{Complex64, QuantParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> berezin::Result<()> {
    let q = QuantParams::new(4.0)?;
    let z = PolynomialSymbol::z(1, 0)?;
    let zb = PolynomialSymbol::zbar(1, 0)?;
    let comm = wick_star(&z, &zb, q)?.sub(&wick_star(&zb, &z, q)?)?;
    println!("z*zbar - zbar*z = {} (1/alpha = {})", comm.coeff(&[0], &[0]), 1.0 / q.alpha());

    let f = z.mul(&z)?.add(&zb)?;
    let g = zb.mul(&zb)?.scale(Complex64::new(0.0, 2.0));
    let show = |p: &PolynomialSymbol| serde_json::to_string(p).unwrap_or_default();
    println!("C_1(f, g) = {}", show(&c_term(&f, &g, 1)?));
    println!("{{f, g}}   = {}", show(&poisson_bracket(&f, &g)?));
    println!("f * g     = {}", show(&wick_star(&f, &g, q)?));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_polynomial(2, 3, &mut rng)?;
        let b = random_polynomial(2, 3, &mut rng)?;
        worst = worst.max(quantization_condition_residual(&a, &b)?);
    }
    println!("quantization condition over 100 random pairs: {worst:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> berezin::Result<()> {
    run_example()
}
