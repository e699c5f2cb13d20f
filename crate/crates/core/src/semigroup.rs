//! The graded semigroup `S_P` and degreewise data of `k[P]`.
//!
//! Degree-`e` elements are written as multisets of lattice-point indices
//! (sorted index vectors) or, after summing, as vectors of `ℤ^d`.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arith::{ExactMatrix, Field};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedMonomial {
    pub vector: Vec<i64>,
    pub degree: usize,
}

/// `x^left − x^right` for two multisets of lattice points with equal sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialRelation {
    pub degree: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub degree: usize,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
}

impl BinomialRelation {
    pub fn to_json(&self, p: &LatticePolytope) -> RelationJson {
        let pts = |s: &[usize]| s.iter().map(|&i| p.lattice_points()[i].clone()).collect();
        RelationJson {
            degree: self.degree,
            left: pts(&self.left),
            right: pts(&self.right),
        }
    }
}

fn multiset_sum(p: &LatticePolytope, multiset: &[usize]) -> Vec<i64> {
    let mut s = vec![0; p.ambient_dim()];
    for &i in multiset {
        for (a, b) in s.iter_mut().zip(&p.lattice_points()[i]) {
            *a += b;
        }
    }
    s
}

/// Degree-`e` monomials keyed by their sum, each with the lex-first multiset
/// of lattice points summing to it.
pub type Sumset = BTreeMap<Vec<i64>, Vec<usize>>;

/// The degree-`(e+1)` sumset from the degree-`e` one.
pub fn extend_sumset(p: &LatticePolytope, layer: &Sumset) -> Sumset {
    let mut next = Sumset::new();
    for (s, w) in layer {
        let start = w.last().copied().unwrap_or(0);
        for (i, x) in p.lattice_points().iter().enumerate().skip(start) {
            let sum: Vec<i64> = s.iter().zip(x).map(|(a, b)| a + b).collect();
            let mut witness = w.clone();
            witness.push(i);
            next.entry(sum)
                .and_modify(|old| {
                    if witness < *old {
                        *old = witness.clone();
                    }
                })
                .or_insert(witness);
        }
    }
    next
}

pub fn sumset_with_witnesses(p: &LatticePolytope, e: usize) -> Sumset {
    let mut layer = Sumset::new();
    layer.insert(vec![0; p.ambient_dim()], Vec::new());
    for _ in 0..e {
        layer = extend_sumset(p, &layer);
    }
    layer
}

pub fn degree_piece(p: &LatticePolytope, e: usize) -> Vec<GradedMonomial> {
    sumset_with_witnesses(p, e)
        .into_keys()
        .map(|vector| GradedMonomial { vector, degree: e })
        .collect()
}

pub fn hilbert(p: &LatticePolytope, e: usize) -> usize {
    sumset_with_witnesses(p, e).len()
}

/// Degree-`e` multisets grouped by their sum, in lex order within each group.
fn fibers(p: &LatticePolytope, e: usize) -> BTreeMap<Vec<i64>, Vec<Vec<usize>>> {
    let mut out: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
    for m in (0..p.num_lattice_points()).combinations_with_replacement(e) {
        out.entry(multiset_sum(p, &m)).or_default().push(m);
    }
    out
}

/// A spanning set of the toric ideal in each degree `2..=max_degree`: within
/// every group of multisets with a common sum, the first is paired with each
/// of the others.
pub fn binomial_relations(p: &LatticePolytope, max_degree: usize) -> Vec<BinomialRelation> {
    let mut out = Vec::new();
    for e in 2..=max_degree {
        for group in fibers(p, e).into_values() {
            let first = &group[0];
            for other in &group[1..] {
                out.push(BinomialRelation {
                    degree: e,
                    left: first.clone(),
                    right: other.clone(),
                });
            }
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the degree-`e` piece of the toric ideal.
pub fn ideal_dim(p: &LatticePolytope, e: usize) -> usize {
    let m = p.num_lattice_points();
    binomial(m + e - 1, e) - hilbert(p, e)
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = [a, b].concat();
    v.sort_unstable();
    v
}

/// Products of the relations of degree `≤ max_degree` with monomials, as
/// rows over the degree-`e` multisets (columns, in lex order). The kernel of
/// this matrix has dimension `hilbert(P, e)` exactly when the products span.
pub fn generation_matrix(p: &LatticePolytope, max_degree: usize, e: usize) -> ExactMatrix {
    let q = Field::Rational;
    let columns: Vec<Vec<usize>> = (0..p.num_lattice_points())
        .combinations_with_replacement(e)
        .collect();
    let col_of: BTreeMap<&Vec<usize>, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut rows = Vec::new();
    for rel in binomial_relations(p, max_degree.min(e)) {
        for mono in (0..p.num_lattice_points()).combinations_with_replacement(e - rel.degree) {
            let mut row = vec![q.zero(); columns.len()];
            row[col_of[&merge(&rel.left, &mono)]] = q.one();
            row[col_of[&merge(&rel.right, &mono)]] = q.from_i64(-1);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return ExactMatrix::zeros(q, 0, columns.len());
    }
    ExactMatrix::from_rows(q, rows).expect("rectangular")
}

/// Whether the relations of degree `≤ max_degree` generate the toric ideal in
/// every degree up to `check_up_to`.
///
/// The spanning matrix is block diagonal over the fibers of the sum map, so
/// its rank is accumulated fiber by fiber.
pub fn is_generated_in_degree(p: &LatticePolytope, max_degree: usize, check_up_to: usize) -> bool {
    let q = Field::Rational;
    (2..=check_up_to).all(|e| {
        let relations = binomial_relations(p, max_degree.min(e));
        let mut rank = 0;
        for group in fibers(p, e).into_values() {
            if group.len() < 2 {
                continue;
            }
            let pos: BTreeMap<&Vec<usize>, usize> = group.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let target = multiset_sum(p, &group[0]);
            let mut rows = Vec::new();
            for rel in &relations {
                for mono in (0..p.num_lattice_points()).combinations_with_replacement(e - rel.degree) {
                    let left = merge(&rel.left, &mono);
                    if multiset_sum(p, &left) != target {
                        continue;
                    }
                    let mut row = vec![q.zero(); group.len()];
                    row[pos[&left]] = q.one();
                    row[pos[&merge(&rel.right, &mono)]] = q.from_i64(-1);
                    rows.push(row);
                }
            }
            if !rows.is_empty() {
                rank += ExactMatrix::from_rows(q, rows).expect("rectangular").rank();
            }
        }
        rank == ideal_dim(p, e)
    })
}

/// Smallest `D ≥ 2` whose relations generate the ideal through degree `D + 1`.
pub fn generation_degree(p: &LatticePolytope, cap: usize) -> Result<usize> {
    (2..=cap)
        .find(|&d| is_generated_in_degree(p, d, d + 1))
        .ok_or(Error::GenerationNotCertified(cap))
}

/// Lattice points of `cP`: the degree-`c` piece of the normalization.
pub fn normalization_degree_piece(p: &LatticePolytope, c: usize) -> Result<Vec<GradedMonomial>> {
    if !p.is_lattice_normalized() {
        return Err(Error::NotNormalized(format!("{p}")));
    }
    Ok(p.dilate(c as i64)?
        .lattice_points()
        .iter()
        .map(|x| GradedMonomial {
            vector: x.clone(),
            degree: c,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    #[test]
    fn hilbert_counts() {
        let sq = catalog::square();
        for e in 0..=4 {
            assert_eq!(hilbert(&sq, e), (e + 1) * (e + 1));
        }
        assert_eq!(hilbert(&catalog::t2(), 2), 10);
        assert_eq!(hilbert(&catalog::simplex(2), 3), 10);
        assert_eq!(degree_piece(&sq, 0), vec![GradedMonomial { vector: vec![0, 0], degree: 0 }]);
    }

    #[test]
    fn square_quadric() {
        let sq = catalog::square();
        let rels = binomial_relations(&sq, 2);
        assert_eq!(rels.len(), 1);
        let json = rels[0].to_json(&sq);
        assert_eq!(json.left, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(json.right, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn relation_free_cases() {
        assert!(binomial_relations(&catalog::t2(), 2).is_empty());
        assert!(binomial_relations(&catalog::simplex(2), 4).is_empty());
    }

    #[test]
    fn generation() {
        assert!(is_generated_in_degree(&catalog::square(), 2, 3));
        assert!(!is_generated_in_degree(&catalog::t2(), 2, 3));
        assert!(is_generated_in_degree(&catalog::t2(), 3, 4));
        assert_eq!(generation_degree(&catalog::t2(), 4).unwrap(), 3);
        assert_eq!(generation_degree(&catalog::square(), 4).unwrap(), 2);
    }

    #[test]
    fn generation_matrix_kernel_matches_hilbert() {
        let sq = catalog::square();
        let m = generation_matrix(&sq, 2, 3);
        assert_eq!(m.cols(), 20);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.kernel_basis().len(), hilbert(&sq, 3));
    }

    #[test]
    fn normalization_pieces() {
        assert_eq!(normalization_degree_piece(&catalog::t2(), 2).unwrap().len(), 10);
        assert_eq!(normalization_degree_piece(&catalog::segment(1), 5).unwrap().len(), 6);
    }
}
