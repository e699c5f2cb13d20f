//! Retractions, fibrations and the tame constructors of graded homomorphisms.

mod constructors;
mod fibration;
mod recipe;
mod veronese;

pub use constructors::{free_extension, homothetic_blowup, homothetic_blowup_with_bound, minkowski_star, polytope_change, PolytopeChange};
pub use fibration::{base_inclusion, detect_segmental_fibrations, fibration_retraction, Fibration};
pub use recipe::{evaluate_recipe, TameRecipe};
pub(crate) use veronese::free_chain;
pub use veronese::{decompose_veronese, factor_affine, veronese_recipe, AffineFactorization, VeroneseDecomposition};

use crate::arith::{ExactMatrix, Field};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::hom::GradedHom;

fn unit_columns(source: &LatticePolytope, target: &LatticePolytope, field: Field, image: impl Fn(&[i64]) -> Option<Vec<i64>>) -> Result<GradedHom> {
    let mut m = ExactMatrix::zeros(field, target.num_lattice_points(), source.num_lattice_points());
    for (j, x) in source.lattice_points().iter().enumerate() {
        if let Some(y) = image(x) {
            let i = target.point_index(&y).ok_or_else(|| Error::NotALatticePoint(y.clone()))?;
            m.set(i, j, field.one());
        }
    }
    GradedHom::new(source.clone(), target.clone(), m)
}

/// `π_F : k[P] → k[F]`, the identity on `L_F` and zero elsewhere.
pub fn face_retraction(p: &LatticePolytope, face: &LatticePolytope, field: Field) -> Result<GradedHom> {
    if !p.is_face(face) {
        return Err(Error::NotAFace(format!("{face} in {p}")));
    }
    unit_columns(p, face, field, |x| face.contains(x).then(|| x.to_vec()))
}

/// The inclusion `k[F] → k[P]` of a face.
pub fn face_inclusion(p: &LatticePolytope, face: &LatticePolytope, field: Field) -> Result<GradedHom> {
    if !p.is_face(face) {
        return Err(Error::NotAFace(format!("{face} in {p}")));
    }
    unit_columns(face, p, field, |x| Some(x.to_vec()))
}
