//! Eigenvalues of real symmetric tridiagonal matrices by Sturm-sequence
//! bisection.
//!
//! Used for the Jacobi matrix of the Hermite recurrence (Gauss–Hermite nodes)
//! and for the finite-difference oscillator Hamiltonian.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off_sq: Vec<f64>,
    pivmin: f64,
    bounds: (f64, f64),
}

impl SymTridiagonal {
    /// `diag` has length `m`, `off` has length `m − 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::param("diag", "matrix must be non-empty"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch { expected: diag.len() - 1, found: off.len() });
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tridiagonal entry".into()));
        }
        let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
        let max_sq = off_sq.iter().copied().fold(1.0, f64::max);
        let pivmin = f64::MIN_POSITIVE * max_sq;

        // Gershgorin interval
        let m = diag.len();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..m {
            let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < m { off[i].abs() } else { 0.0 };
            lo = lo.min(diag[i] - r);
            hi = hi.max(diag[i] + r);
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()) * m as f64 + pivmin;
        Ok(Self { diag, off_sq, pivmin, bounds: (lo - pad, hi + pad) })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly less than `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < self.pivmin {
            q = -self.pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for (d, e2) in self.diag[1..].iter().zip(&self.off_sq) {
            q = d - x - e2 / q;
            if q.abs() < self.pivmin {
                q = -self.pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::param("k", format!("index {k} out of range for size {}", self.len())));
        }
        let (mut lo, mut hi) = self.bounds;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("eigenvalue {k}")));
        }
        Ok(value)
    }

    /// The `count` smallest eigenvalues, ascending.
    pub fn smallest(&self, count: usize) -> Result<Vec<f64>> {
        (0..count).map(|k| self.eigenvalue(k)).collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.smallest(self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn second_difference_matrix() {
        // tridiag(-1, 2, -1) has eigenvalues 2 − 2cos(kπ/(m+1))
        let m = 50;
        let t = SymTridiagonal::new(vec![2.0; m], vec![-1.0; m - 1]).unwrap();
        let ev = t.eigenvalues().unwrap();
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * (std::f64::consts::PI * (k + 1) as f64 / (m + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{k}: {v} vs {exact}");
        }
    }

    #[test]
    fn diagonal_and_single() {
        let t = SymTridiagonal::new(vec![3.0, -1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(t.eigenvalues().unwrap(), vec![-1.0, 2.0, 3.0]);
        let s = SymTridiagonal::new(vec![4.5], vec![]).unwrap();
        assert_relative_eq!(s.eigenvalue(0).unwrap(), 4.5);
        assert!(s.eigenvalue(1).is_err());
    }

    #[test]
    fn two_by_two() {
        // [[1, 2], [2, 1]] → −1, 3
        let t = SymTridiagonal::new(vec![1.0, 1.0], vec![2.0]).unwrap();
        let ev = t.eigenvalues().unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn shape_errors() {
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
    }
}
