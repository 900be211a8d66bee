//! Berezin quantization of Gaussian states on `C^n` with the Gaussian
//! (Segal–Bargmann) weight.
//!
//! The crate is organised around closed-form results and the numerical
//! oracles that check them:
//!
//! * [`gaussian`] – Gaussian symbols, the Berezin transform in closed form,
//!   the heat semigroup and Gaussian moments.
//! * [`bergman`] – weight, reproducing kernel, the inner-product trace and
//!   the purity index of a transformed Gaussian.
//! * [`quadrature`] – Gauss–Hermite rules, tensor integration, a direct
//!   evaluation of the Berezin integral and a Monte-Carlo estimator.
//! * [`semiclassics`] – polynomial symbols, the Wick star product, its
//!   bidifferential terms and the first-order expansion check.
//! * [`oscillator`] – finite-difference harmonic oscillator and the
//!   uncertainty identity for the quantized Gaussian.
//! * [`cli`] – the run records, sweeps and verification suites behind the
//!   `berezin` binary.
//!
//! ```
//! use berezin::{GaussianSymbol, QuantParams};
//!
//! let f = GaussianSymbol::new(1, 1.0, 1.0)?;
//! let b = f.berezin_transform(QuantParams::new(1.0)?);
//! assert!((b.compression() - 0.5).abs() < 1e-15);
//! assert!((b.amplitude() - 0.5f64.sqrt()).abs() < 1e-15);
//! # Ok::<(), berezin::Error>(())
//! ```

pub mod bergman;
pub mod cli;
pub mod convergence;
mod error;
pub mod gaussian;
pub mod oscillator;
pub mod quadrature;
pub mod semiclassics;
pub mod tridiag;

pub use error::{Error, Result};
pub use gaussian::{ComplexPoint, GaussianSymbol, QuantParams};
pub use num_complex::Complex64;
