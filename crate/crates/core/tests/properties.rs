use std::collections::BTreeMap;

use berezin::bergman::{kernel, purity_index};
use berezin::cli::sweep::{run_sweep, Axis, Quantity};
use berezin::cli::RunRecord;
use berezin::oscillator::uncertainty_report;
use berezin::quadrature::{berezin_transform_numeric, gauss_hermite};
use berezin::semiclassics::{quantization_condition_residual, random_polynomial, wick_star, PolynomialSymbol};
use berezin::{Complex64, ComplexPoint, GaussianSymbol, QuantParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn polys(seed: u64, dim: usize, degree: u32, count: usize) -> Vec<PolynomialSymbol> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_polynomial(dim, degree, &mut rng).unwrap()).collect()
}

fn point(coords: &[(f64, f64)]) -> ComplexPoint {
    ComplexPoint::new(coords.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn width_map_contracts(lambda in 0.0f64..1e3, alpha in 1e-3f64..1e6, n in 1usize..5) {
        let g = GaussianSymbol::new(n, 1.0, lambda).unwrap();
        let b = g.berezin_transform(QuantParams::new(alpha).unwrap());
        prop_assert!(b.compression() <= lambda);
        prop_assert!(b.compression() <= alpha);
        prop_assert!(b.amplitude() > 0.0 && b.amplitude() <= 1.0);
    }

    #[test]
    fn transforms_compose_as_heat_flow(lambda in 0.01f64..10.0, a1 in 0.1f64..100.0, a2 in 0.1f64..100.0) {
        let g = GaussianSymbol::new(2, 1.7, lambda).unwrap();
        let q1 = QuantParams::new(a1).unwrap();
        let q2 = QuantParams::new(a2).unwrap();
        let twice = g.transform_compose(q1, q2);
        let once = g.heat_flow(1.0 / a1 + 1.0 / a2).unwrap();
        prop_assert!((twice.compression() - once.compression()).abs() <= 1e-13 * once.compression());
        prop_assert!((twice.amplitude() - once.amplitude()).abs() <= 1e-13 * once.amplitude());
    }

    #[test]
    fn quadrature_matches_closed_form(lambda in 0.0f64..3.0, alpha in 0.5f64..50.0, x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let g = GaussianSymbol::new(1, 1.0, lambda).unwrap();
        let q = QuantParams::new(alpha).unwrap();
        let z = point(&[(x, y)]);
        let closed = g.berezin_transform(q).eval(&z).unwrap();
        let numeric = berezin_transform_numeric(&g, &z, q, 80).unwrap();
        prop_assert!((numeric - closed).norm() <= 1e-9 * closed.max(1e-3), "{numeric} vs {closed}");
    }

    #[test]
    fn kernel_is_hermitian(a in prop::array::uniform4(-2.0f64..2.0), b in prop::array::uniform4(-2.0f64..2.0), alpha in 0.1f64..5.0) {
        let q = QuantParams::new(alpha).unwrap();
        let z = point(&[(a[0], a[1]), (a[2], a[3])]);
        let w = point(&[(b[0], b[1]), (b[2], b[3])]);
        let kzw = kernel(&z, &w, q).unwrap();
        let kwz = kernel(&w, &z, q).unwrap();
        prop_assert!((kzw - kwz.conj()).norm() <= 1e-12 * kzw.norm());
        prop_assert!(kernel(&z, &z, q).unwrap().im.abs() <= 1e-12 * kernel(&z, &z, q).unwrap().re);
    }

    #[test]
    fn purity_in_unit_interval_and_monotone(lambda in 0.01f64..10.0, alpha in 0.01f64..1e4, n in 1usize..6) {
        let t1 = purity_index(lambda, QuantParams::new(alpha).unwrap(), n).unwrap().normalized_trace;
        let t2 = purity_index(lambda, QuantParams::new(2.0 * alpha).unwrap(), n).unwrap().normalized_trace;
        prop_assert!(t1 > 0.0 && t1 <= 1.0);
        prop_assert!(t2 >= t1);
    }

    #[test]
    fn uncertainty_is_saturated(lambda in 1e-3f64..1e3, k in 1e-2f64..1e2) {
        let r = uncertainty_report(lambda, k).unwrap();
        prop_assert!((r.ratio - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn star_product_is_associative(seed in any::<u64>(), dim in 1usize..3, alpha in 0.2f64..10.0) {
        let q = QuantParams::new(alpha).unwrap();
        let p = polys(seed, dim, 2, 3);
        let left = wick_star(&wick_star(&p[0], &p[1], q).unwrap(), &p[2], q).unwrap();
        let right = wick_star(&p[0], &wick_star(&p[1], &p[2], q).unwrap(), q).unwrap();
        let scale = 1.0 + left.max_abs_coeff();
        prop_assert!(left.sub(&right).unwrap().max_abs_coeff() <= 1e-12 * scale);
    }

    #[test]
    fn star_product_is_bilinear(seed in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let q = QuantParams::new(1.3).unwrap();
        let c = Complex64::new(re, im);
        let p = polys(seed, 2, 3, 3);
        let lhs = wick_star(&p[0].scale(c).add(&p[1]).unwrap(), &p[2], q).unwrap();
        let rhs = wick_star(&p[0], &p[2], q).unwrap().scale(c).add(&wick_star(&p[1], &p[2], q).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs_coeff() <= 1e-12 * (1.0 + lhs.max_abs_coeff()));
    }

    #[test]
    fn quantization_condition_holds(seed in any::<u64>(), dim in 1usize..4) {
        let p = polys(seed, dim, 3, 2);
        prop_assert!(quantization_condition_residual(&p[0], &p[1]).unwrap() <= 1e-14);
    }

    #[test]
    fn polynomial_json_round_trip(seed in any::<u64>(), dim in 1usize..3) {
        let p = polys(seed, dim, 3, 1).remove(0);
        let back: PolynomialSymbol = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn run_record_round_trip(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 0..8), seed in any::<Option<u64>>()) {
        let mut params = BTreeMap::new();
        params.insert("grid".to_owned(), json!(values));
        let rec = RunRecord::new("sweep", params, json!({ "rows": values }), seed);
        let back: RunRecord = serde_json::from_str(&rec.to_json()).unwrap();
        prop_assert_eq!(back, rec);
    }

    #[test]
    fn sweep_rows_follow_grid(grid in prop::collection::vec(0.01f64..100.0, 1..20)) {
        let t = run_sweep(Quantity::Compression, Axis::Alpha, &grid, 1, 1.0, 1.0).unwrap();
        let alphas: Vec<f64> = t.rows.iter().map(|r| r[2]).collect();
        prop_assert_eq!(&alphas, &grid);
        prop_assert_eq!(t.to_csv(), run_sweep(Quantity::Compression, Axis::Alpha, &grid, 1, 1.0, 1.0).unwrap().to_csv());
    }

    #[test]
    fn gauss_hermite_invariants(m in 1usize..=150) {
        let rule = gauss_hermite(m).unwrap();
        let total: f64 = rule.weights().iter().sum();
        prop_assert!((total - std::f64::consts::PI.sqrt()).abs() <= 1e-13);
        prop_assert!(rule.weights().iter().all(|w| *w > 0.0));
        let nodes = rule.nodes();
        prop_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        for (a, b) in nodes.iter().zip(nodes.iter().rev()) {
            prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
