//! Exact linear algebra over the Gaussian rationals Q(i), with guarded
//! floating-point fallbacks for irrational eigenvalues.

pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod value;

pub use matrix::{ExactMatrix, SpanTracker, Vector};
pub use numeric::{ApproxComplex, DEFAULT_TOL};
pub use poly::{minors_gcd_poly, pencil_det_poly, UniPolynomial};
pub use roots::{poly_roots, Root};
pub use scalar::GaussianRational;
pub use value::Value;
