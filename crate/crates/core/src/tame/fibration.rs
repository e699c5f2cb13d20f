use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::unit_columns;
use crate::arith::{lattice, Field};
use crate::error::{Error, Result};
use crate::geometry::{sub, LatticePolytope};
use crate::hom::GradedHom;

/// A lattice fibration `(P, H, W)`: `W` is a linear subspace, `H` an affine
/// subspace `h_point + span(h_basis)` of complementary dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fibration {
    #[serde(rename = "W_basis", alias = "w")]
    pub w_basis: Vec<Vec<i64>>,
    #[serde(rename = "H_point")]
    pub h_point: Vec<i64>,
    #[serde(rename = "H_basis", default)]
    pub h_basis: Vec<Vec<i64>>,
}

fn in_span(basis: &[Vec<i64>], v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0) || lattice::rational_coordinates(basis, v).is_some()
}

impl Fibration {
    fn in_h(&self, x: &[i64]) -> bool {
        in_span(&self.h_basis, &sub(x, &self.h_point))
    }

    /// Lattice points of `P` on `H`.
    pub fn base_points(&self, p: &LatticePolytope) -> Vec<Vec<i64>> {
        p.lattice_points().iter().filter(|x| self.in_h(x)).cloned().collect()
    }

    /// The base polytope `P ∩ H`, spanned by its lattice points.
    pub fn base(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        let pts = self.base_points(p);
        if pts.is_empty() {
            return Err(Error::InvalidFibration("H misses every lattice point".into()));
        }
        LatticePolytope::new(p.ambient_dim(), pts)
    }

    /// The base point of the fiber through `x`.
    fn foot(&self, p: &LatticePolytope, x: &[i64]) -> Option<Vec<i64>> {
        self.base_points(p).into_iter().find(|b| in_span(&self.w_basis, &sub(x, b)))
    }

    /// Checks the dimension, covering and direct-sum conditions.
    pub fn validate(&self, p: &LatticePolytope) -> Result<()> {
        let n = p.ambient_dim();
        let bad = |s: &str| Err(Error::InvalidFibration(s.to_string()));
        if p.dim() != n {
            return Err(Error::NotNormalized(format!("{p} is not full-dimensional")));
        }
        if self.h_point.len() != n || self.w_basis.iter().chain(&self.h_basis).any(|v| v.len() != n) {
            return bad("vector length differs from the ambient dimension");
        }
        let dw = lattice::rank(&self.w_basis);
        let dh = lattice::rank(&self.h_basis);
        let joint: Vec<Vec<i64>> = self.w_basis.iter().chain(&self.h_basis).cloned().collect();
        if dw + dh != n || lattice::rank(&joint) != n {
            return bad("W and H are not complementary");
        }
        if p.lattice_points().iter().any(|x| self.foot(p, x).is_none()) {
            return bad("a lattice point lies on no fiber through P ∩ H");
        }
        let lift = |x: &Vec<i64>| -> Vec<i64> { x.iter().copied().chain([1]).collect() };
        let gp = lattice::hermite_basis(&p.lattice_points().iter().map(lift).collect_vec());
        let w1: Vec<Vec<i64>> = self.w_basis.iter().map(|w| w.iter().copied().chain([0]).collect()).collect();
        let along_w = lattice::intersect_with_span(&gp, &w1);
        let base = lattice::hermite_basis(&self.base_points(p).iter().map(lift).collect_vec());
        let sum: Vec<Vec<i64>> = along_w.iter().chain(&base).cloned().collect();
        if along_w.len() + base.len() != gp.len() || !lattice::same_lattice(&sum, &gp) {
            return bad("the lattice does not split along W and the base");
        }
        Ok(())
    }
}

/// Canonical sign: first nonzero entry positive.
fn canonical(v: Vec<i64>) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v,
    }
}

fn affine_rank(points: &[&Vec<i64>]) -> usize {
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|x| sub(x, points[0])).collect();
    lattice::rank(&diffs)
}

/// All segmental fibrations of a full-dimensional, lattice-normalized `P`:
/// `W` runs over primitive lattice directions and `H` over the hyperplanes
/// meeting each line `x + W` in exactly one lattice point of `P`.
pub fn detect_segmental_fibrations(p: &LatticePolytope) -> Result<Vec<Fibration>> {
    if p.dim() != p.ambient_dim() || !p.is_lattice_normalized() {
        return Err(Error::NotNormalized(format!("{p}")));
    }
    let n = p.ambient_dim();
    let pts = p.lattice_points();
    let directions: BTreeSet<Vec<i64>> = pts
        .iter()
        .tuple_combinations()
        .map(|(a, b)| canonical(lattice::primitive(&sub(b, a))))
        .collect();
    let mut out = Vec::new();
    for w in directions {
        let wb = vec![w.clone()];
        let mut classes: Vec<Vec<&Vec<i64>>> = Vec::new();
        for x in pts {
            match classes.iter_mut().find(|c| in_span(&wb, &sub(x, c[0]))) {
                Some(c) => c.push(x),
                None => classes.push(vec![x]),
            }
        }
        for choice in classes.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
            if affine_rank(&choice) + 1 != n {
                continue;
            }
            let h_basis = if n == 1 {
                Vec::new()
            } else {
                lattice::hermite_basis(&choice[1..].iter().map(|x| sub(x, choice[0])).collect_vec())
            };
            let fib = Fibration {
                w_basis: wb.clone(),
                h_point: choice[0].clone(),
                h_basis,
            };
            if fib.validate(p).is_ok() {
                out.push(fib);
            }
        }
    }
    Ok(out)
}

/// The retraction `ρ : k[P] → k[P ∩ H]` contracting each fiber to its foot.
pub fn fibration_retraction(p: &LatticePolytope, fib: &Fibration, field: Field) -> Result<GradedHom> {
    fib.validate(p)?;
    let base = fib.base(p)?;
    unit_columns(p, &base, field, |x| fib.foot(p, x))
}

/// The inclusion `k[P ∩ H] → k[P]` of the base.
pub fn base_inclusion(p: &LatticePolytope, fib: &Fibration, field: Field) -> Result<GradedHom> {
    let base = fib.base(p)?;
    unit_columns(&base, p, field, |x| Some(x.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;
    use crate::hom::{is_homomorphism, is_idempotent};

    #[test]
    fn square_has_both_axis_fibrations() {
        let sq = catalog::square();
        let fibs = detect_segmental_fibrations(&sq).unwrap();
        for w in [vec![1, 0], vec![0, 1]] {
            assert!(fibs.iter().any(|f| f.w_basis == vec![w.clone()] && f.h_point == vec![0, 0]));
        }
        for f in &fibs {
            let rho = fibration_retraction(&sq, f, Field::Rational).unwrap();
            assert!(is_homomorphism(&rho, 2));
            let e = base_inclusion(&sq, f, Field::Rational).unwrap().compose(&rho).unwrap();
            assert!(is_idempotent(&e).unwrap());
        }
    }

    #[test]
    fn t2_has_none() {
        assert!(detect_segmental_fibrations(&catalog::t2()).unwrap().is_empty());
    }

    #[test]
    fn segment_fibres_over_a_point() {
        let fibs = detect_segmental_fibrations(&catalog::simplex(1)).unwrap();
        assert!(fibs.contains(&Fibration {
            w_basis: vec![vec![1]],
            h_point: vec![0],
            h_basis: vec![],
        }));
    }

    #[test]
    fn bad_fibration_is_rejected() {
        let sq = catalog::square();
        let fib = Fibration {
            w_basis: vec![vec![1, 0]],
            h_point: vec![0, 0],
            h_basis: vec![vec![1, 0]],
        };
        assert!(matches!(
            fibration_retraction(&sq, &fib, Field::Rational),
            Err(Error::InvalidFibration(_))
        ));
    }
}
