use serde::{Deserialize, Serialize};

use super::polytope::{add, sub};
use super::LatticePolytope;
use crate::arith::lattice;
use crate::arith::{ExactMatrix, Field};
use crate::error::{Error, Result};

/// `x ↦ matrix · x + translation`, with `matrix` of shape `d' × d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineLatticeMap {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl AffineLatticeMap {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<i64>) -> Result<Self> {
        if matrix.len() != translation.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrix rows but translation of length {}",
                matrix.len(),
                translation.len()
            )));
        }
        if let Some(first) = matrix.first() {
            if matrix.iter().any(|r| r.len() != first.len()) {
                return Err(Error::ShapeMismatch("ragged matrix".into()));
            }
        }
        Ok(AffineLatticeMap {
            matrix,
            translation,
        })
    }

    pub fn identity(d: usize) -> Self {
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        AffineLatticeMap {
            matrix,
            translation: vec![0; d],
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let linear: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        add(&linear, &self.translation)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineLatticeMap) -> AffineLatticeMap {
        let d = inner.source_dim();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..d)
                    .map(|j| row.iter().zip(&inner.matrix).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        AffineLatticeMap {
            matrix,
            translation: self.apply(&inner.translation),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineLatticeMap::identity(self.target_dim())
    }

    pub fn is_unimodular(&self) -> bool {
        self.source_dim() == self.target_dim() && lattice::det(&self.matrix).abs() == 1
    }

    pub fn inverse(&self) -> Option<AffineLatticeMap> {
        if !self.is_unimodular() {
            return None;
        }
        let q = Field::Rational;
        let inv = ExactMatrix::from_i64_rows(q, &self.matrix).ok()?.inverse()?;
        let matrix: Vec<Vec<i64>> = inv
            .to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| s.to_bigint().and_then(|b| i64::try_from(b).ok()))
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<_>>()?;
        let partial = AffineLatticeMap {
            matrix,
            translation: vec![0; self.target_dim()],
        };
        let translation = partial.apply(&self.translation).iter().map(|x| -x).collect();
        Some(AffineLatticeMap {
            translation,
            ..partial
        })
    }

    pub fn image(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        if p.ambient_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                got: p.ambient_dim(),
            });
        }
        LatticePolytope::new(
            self.target_dim(),
            p.vertices().iter().map(|v| self.apply(v)).collect(),
        )
    }
}

/// Re-embeds `P` so its lattice points affinely generate `ℤ^{dim P}`.
///
/// Returns the normalized polytope and the map taking normalized coordinates
/// back to the ambient ones. Already normalized full-dimensional polytopes
/// are returned unchanged with the identity map.
pub fn normalize_lattice(p: &LatticePolytope) -> (LatticePolytope, AffineLatticeMap) {
    let k = p.dim();
    let d = p.ambient_dim();
    let basis = p.difference_lattice();
    if k == d && lattice::saturation_index(&basis) == 1 {
        return (p.clone(), AffineLatticeMap::identity(d));
    }
    let x0 = &p.lattice_points()[0];
    let origin_reachable = if k == 0 {
        x0.iter().all(|&c| c == 0)
    } else {
        lattice::lattice_contains(&basis, x0)
    };
    let translation = if origin_reachable { vec![0; d] } else { x0.clone() };
    let coords = |x: &Vec<i64>| -> Vec<i64> {
        if k == 0 {
            Vec::new()
        } else {
            lattice::integer_coordinates(&basis, &sub(x, &translation))
                .expect("lattice point lies in the affine lattice")
        }
    };
    let verts = p.vertices().iter().map(coords).collect();
    let normalized = LatticePolytope::new(k, verts)
        .expect("normalized polytope")
        .with_name(p.name());
    let matrix = (0..d)
        .map(|i| basis.iter().map(|b| b[i]).collect())
        .collect();
    (
        normalized,
        AffineLatticeMap {
            matrix,
            translation,
        },
    )
}

/// An apex `v` with base `P_0` such that `L_P = {v} ∪ L_{P_0}`; the base is
/// absent when `P` is a single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    pub apex: Vec<i64>,
    pub base: Option<LatticePolytope>,
}

/// Every apex for which `P` is a lattice pyramid.
pub fn is_pyramid(p: &LatticePolytope) -> Vec<Pyramid> {
    if p.dim() == 0 {
        return vec![Pyramid {
            apex: p.vertices()[0].clone(),
            base: None,
        }];
    }
    p.vertices()
        .iter()
        .filter_map(|v| {
            let rest: Vec<Vec<i64>> = p.vertices().iter().filter(|w| *w != v).cloned().collect();
            let base = LatticePolytope::new(p.ambient_dim(), rest).ok()?;
            (base.dim() + 1 == p.dim() && base.num_lattice_points() + 1 == p.num_lattice_points())
                .then(|| Pyramid {
                    apex: v.clone(),
                    base: Some(base),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    #[test]
    fn diagonal_segment_normalizes() {
        let seg = LatticePolytope::new(2, vec![vec![0, 0], vec![2, 2]]).unwrap();
        let (n, map) = normalize_lattice(&seg);
        assert_eq!(n, catalog::segment(2));
        assert_eq!(map.apply(&[1]), vec![1, 1]);
        assert_eq!(map.image(&n).unwrap(), seg);
    }

    #[test]
    fn shifted_segment_keeps_a_translation() {
        let seg = LatticePolytope::new(2, vec![vec![1, 0], vec![1, 3]]).unwrap();
        let (n, map) = normalize_lattice(&seg);
        assert_eq!(n.num_lattice_points(), 4);
        assert_eq!(map.image(&n).unwrap(), seg);
    }

    #[test]
    fn normalized_polytopes_are_fixed() {
        for p in [catalog::square(), catalog::t1(), catalog::t2()] {
            let (n, map) = normalize_lattice(&p);
            assert_eq!(n, p);
            assert!(map.is_identity());
        }
    }

    #[test]
    fn pyramids() {
        assert_eq!(is_pyramid(&catalog::simplex(2)).len(), 3);
        assert!(is_pyramid(&catalog::square()).is_empty());
        let t1 = is_pyramid(&catalog::t1());
        assert_eq!(t1.len(), 1);
        assert_eq!(t1[0].apex, vec![0, 1]);
        assert_eq!(
            t1[0].base.as_ref().unwrap().lattice_points(),
            &[vec![-1, 0], vec![0, 0], vec![1, 0]]
        );
    }

    #[test]
    fn affine_inverse() {
        let m = AffineLatticeMap::new(vec![vec![2, 1], vec![1, 1]], vec![3, -1]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).is_identity());
        assert_eq!(inv.apply(&m.apply(&[5, 7])), vec![5, 7]);
    }
}
