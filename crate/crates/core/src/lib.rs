//! Exact polytopal linear algebra.
//!
//! Lattice polytopes `P`, their polytopal algebras `k[P]`, and the graded
//! homomorphisms between them, all computed with exact arithmetic over ℚ or
//! a prime field.

pub mod arith;
pub mod automorphism;
pub mod error;
pub mod geometry;
pub mod hom;
pub mod json;
pub mod sample;
pub mod semigroup;
pub mod tame;
pub mod verify;

pub use arith::{ExactMatrix, Field, LaurentPoly, Scalar};
pub use error::{Error, Result};
