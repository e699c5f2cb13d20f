//! Lattice polytopes and integral affine maps.

mod affine;
pub mod catalog;
mod polytope;

pub use affine::{is_pyramid, normalize_lattice, AffineLatticeMap, Pyramid};
pub use polytope::{Facet, LatticePolytope};

pub(crate) use polytope::{add, integer_direction, sub};
