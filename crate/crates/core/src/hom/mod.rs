//! Graded homomorphisms `k[P] → k[Q]` and the hom-variety.

mod equations;

pub use equations::{hom_equations, hom_equations_over, tangent_dim, tangent_dim_with, HomEquations, IntPoly};

use crate::arith::{ExactMatrix, Field, LaurentPoly, Scalar};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::semigroup;

/// Generation degree assumed when none is certified below this cap.
pub const RELATION_DEGREE_CAP: usize = 5;

/// A graded homomorphism given by its degree-1 matrix.
///
/// Column `x` lists the coefficients of the image of the lattice point `x`
/// of the source over the lattice points of the target (both in lex order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHom {
    source: LatticePolytope,
    target: LatticePolytope,
    matrix: ExactMatrix,
}

impl GradedHom {
    pub fn new(source: LatticePolytope, target: LatticePolytope, matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != target.num_lattice_points() || matrix.cols() != source.num_lattice_points() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_lattice_points(),
                source.num_lattice_points()
            )));
        }
        Ok(GradedHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(p: &LatticePolytope, field: Field) -> Self {
        let m = p.num_lattice_points();
        GradedHom {
            source: p.clone(),
            target: p.clone(),
            matrix: ExactMatrix::identity(field, m),
        }
    }

    /// Builds the map from the images of the source lattice points, given as
    /// Laurent polynomials supported on the target's lattice points.
    pub fn from_images(source: LatticePolytope, target: LatticePolytope, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != source.num_lattice_points() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} lattice points",
                images.len(),
                source.num_lattice_points()
            )));
        }
        let field = images
            .first()
            .map(LaurentPoly::field)
            .ok_or_else(|| Error::InvalidInput("empty source".into()))?;
        let mut matrix = ExactMatrix::zeros(field, target.num_lattice_points(), images.len());
        for (j, img) in images.iter().enumerate() {
            if img.field() != field {
                return Err(Error::FieldMismatch(format!("image over {}", img.field())));
            }
            if img.dim() != target.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: target.ambient_dim(),
                    got: img.dim(),
                });
            }
            for (e, c) in img.terms() {
                let i = target.point_index(e).ok_or_else(|| Error::ImageEscapesTarget {
                    point: source.lattice_points()[j].clone(),
                    monomial: e.to_vec(),
                })?;
                matrix.set(i, j, c.clone());
            }
        }
        GradedHom::new(source, target, matrix)
    }

    pub fn source(&self) -> &LatticePolytope {
        &self.source
    }

    pub fn target(&self) -> &LatticePolytope {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Image of the `j`-th source lattice point as a Laurent polynomial over
    /// the target's coordinates (degree marker dropped).
    pub fn image(&self, j: usize) -> LaurentPoly {
        let mut f = LaurentPoly::zero(self.field(), self.target.ambient_dim());
        for (i, y) in self.target.lattice_points().iter().enumerate() {
            let c = self.matrix.get(i, j);
            if !c.is_zero() {
                f.add_term(y.clone(), c.clone());
            }
        }
        f
    }

    pub fn image_of(&self, x: &[i64]) -> Result<LaurentPoly> {
        let j = self
            .source
            .point_index(x)
            .ok_or_else(|| Error::NotALatticePoint(x.to_vec()))?;
        Ok(self.image(j))
    }

    pub fn images(&self) -> Vec<LaurentPoly> {
        (0..self.source.num_lattice_points()).map(|j| self.image(j)).collect()
    }

    /// Image of the product of the given source lattice points.
    pub fn image_of_product(&self, multiset: &[usize]) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.field(), self.target.ambient_dim());
        for &j in multiset {
            acc = acc.mul(&self.image(j)).expect("same field and dimension");
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedHom) -> Result<GradedHom> {
        if inner.target != self.source {
            return Err(Error::PolytopeMismatch(format!(
                "inner target {} differs from outer source {}",
                inner.target, self.source
            )));
        }
        if inner.field() != self.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", inner.field(), self.field())));
        }
        GradedHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix)?,
        )
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// The same matrix with source and target replaced by equal-sized
    /// polytopes (used after lattice-preserving re-embeddings).
    pub fn with_polytopes(&self, source: LatticePolytope, target: LatticePolytope) -> Result<GradedHom> {
        GradedHom::new(source, target, self.matrix.clone())
    }

    pub fn to_field(&self, field: Field) -> Result<GradedHom> {
        let rows = self
            .matrix
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => {
                            let num = field.from_bigint(q.numer());
                            num.div(&field.from_bigint(q.denom()))
                        }
                        Scalar::Prime { .. } => Err(Error::FieldMismatch("already over a prime field".into())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GradedHom::new(self.source.clone(), self.target.clone(), ExactMatrix::from_rows(field, rows)?)
    }
}

/// The certified generation degree of the toric ideal of `P`.
pub fn relation_degree(p: &LatticePolytope) -> Result<usize> {
    semigroup::generation_degree(p, RELATION_DEGREE_CAP)
}

/// Whether every spanning relation of degree `≤ max_degree` of the source
/// maps to zero.
pub fn is_homomorphism(f: &GradedHom, max_degree: usize) -> bool {
    semigroup::binomial_relations(f.source(), max_degree)
        .iter()
        .all(|rel| f.image_of_product(&rel.left) == f.image_of_product(&rel.right))
}

/// `is_homomorphism` at the certified relation degree of the source.
pub fn is_homomorphism_certified(f: &GradedHom) -> Result<bool> {
    Ok(is_homomorphism(f, relation_degree(f.source())?))
}

/// Fails with `NotAHomomorphism` unless `f` passes the relation check.
pub fn ensure_homomorphism(f: &GradedHom) -> Result<()> {
    if is_homomorphism_certified(f)? {
        Ok(())
    } else {
        Err(Error::NotAHomomorphism(format!("{} -> {}", f.source(), f.target())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree1Rank {
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

pub fn degree1_rank(f: &GradedHom) -> Degree1Rank {
    let rank = f.matrix().rank();
    Degree1Rank {
        rank,
        injective: rank == f.source().num_lattice_points(),
        surjective: rank == f.target().num_lattice_points(),
    }
}

pub fn is_idempotent(f: &GradedHom) -> Result<bool> {
    if !f.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    Ok(f.compose(f)? == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_is_homomorphism() {
        for p in catalog::standard() {
            assert!(is_homomorphism(&GradedHom::identity(&p, q()), 3));
        }
    }

    #[test]
    fn opposite_corner_swap_preserves_the_quadric() {
        let sq = catalog::square();
        // lattice points (0,0),(0,1),(1,0),(1,1); x00 x11 − x01 x10 is symmetric
        // in x00 and x11
        let m = ExactMatrix::from_i64_rows(
            q(),
            &[vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 0]],
        )
        .unwrap();
        let f = GradedHom::new(sq.clone(), sq, m).unwrap();
        assert!(is_homomorphism(&f, 2));
    }

    #[test]
    fn swapping_a_corner_with_an_edge_point_breaks_the_quadric() {
        let sq = catalog::square();
        let m = ExactMatrix::from_i64_rows(
            q(),
            &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        let f = GradedHom::new(sq.clone(), sq, m).unwrap();
        assert!(!is_homomorphism(&f, 2));
    }

    #[test]
    fn shape_is_checked() {
        let err = GradedHom::new(catalog::square(), catalog::simplex(1), ExactMatrix::identity(q(), 2));
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn rank_and_idempotence() {
        let id = GradedHom::identity(&catalog::square(), q());
        assert_eq!(
            degree1_rank(&id),
            Degree1Rank {
                rank: 4,
                injective: true,
                surjective: true
            }
        );
        assert!(is_idempotent(&id).unwrap());
        let f = GradedHom::new(catalog::square(), catalog::simplex(1), ExactMatrix::zeros(q(), 2, 4)).unwrap();
        assert_eq!(is_idempotent(&f), Err(Error::NotEndomorphism));
    }

    #[test]
    fn images_round_trip() {
        let sq = catalog::square();
        let id = GradedHom::identity(&sq, q());
        let back = GradedHom::from_images(sq.clone(), sq, &id.images()).unwrap();
        assert_eq!(back, id);
    }
}
