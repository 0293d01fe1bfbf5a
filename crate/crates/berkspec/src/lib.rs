//! Exact radii of convergence and Berkovich spectra of p-adic linear
//! differential operators over the points `x_{0,r}` of the affine line.
//!
//! Absolute values are kept as exact rational exponents of `p`, scalars live in
//! totally ramified extensions `Q(p^(1/m))`, and function coefficients are
//! Laurent polynomials carrying exact Gauss norms.

pub mod arith;
pub mod cli;
pub mod diffop;
pub mod error;
pub mod geometry;
pub mod json;
pub mod laurent;
pub mod newton;
pub mod oracle;
pub mod radii;
pub mod scalars;
pub mod spectrum;
pub mod valuation;

pub use diffop::DiffOp;
pub use error::{Error, ErrorClass, Result};
pub use laurent::{Gauge, LaurentPoly};
pub use newton::NewtonPolygon;
pub use scalars::Scalar;
pub use valuation::{omega, Val};
