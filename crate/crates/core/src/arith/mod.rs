//! Exact scalar, Laurent-polynomial, matrix and integer-lattice arithmetic.

pub mod field;
pub mod gcd;
pub mod lattice;
pub mod laurent;
pub mod matrix;

pub use field::{Field, Scalar};
pub use laurent::{Exponent, LaurentPoly, TermJson};
pub use matrix::ExactMatrix;
