use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{relation_degree, GradedHom};
use crate::arith::{ExactMatrix, Field, Scalar};
use crate::error::Result;
use crate::geometry::LatticePolytope;
use crate::semigroup::{binomial_relations, BinomialRelation};

/// Integer polynomial in the variables `X_v`; a monomial is the sorted list
/// of its variable indices (with repetition).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl IntPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(Vec::len).collect::<BTreeSet<_>>().len() <= 1
    }

    pub fn evaluate(&self, field: Field, values: &[Scalar]) -> Scalar {
        let mut acc = field.zero();
        for (mono, &c) in &self.terms {
            let mut t = field.from_i64(c);
            for &v in mono {
                t = &t * &values[v];
            }
            acc += &t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> IntPoly {
        let mut out = IntPoly::default();
        for (mono, &c) in &self.terms {
            let k = mono.iter().filter(|&&v| v == var).count() as i64;
            if k == 0 {
                continue;
            }
            let mut rest = mono.clone();
            let pos = rest.iter().position(|&v| v == var).expect("variable occurs");
            rest.remove(pos);
            *out.terms.entry(rest).or_insert(0) += k * c;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub monomial: Vec<usize>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationsJson {
    pub vars: Vec<[Vec<i64>; 2]>,
    pub polys: Vec<Vec<TermEntry>>,
}

/// Defining equations of `Hom(k[P], k[Q])` in the variables `X_{ij}`, the
/// coefficient of target point `j` in the image of source point `i`, with
/// variable index `i · #L_Q + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEquations {
    pub source: LatticePolytope,
    pub target: LatticePolytope,
    pub polys: Vec<IntPoly>,
}

impl HomEquations {
    pub fn num_vars(&self) -> usize {
        self.source.num_lattice_points() * self.target.num_lattice_points()
    }

    pub fn var_index(&self, i: usize, j: usize) -> usize {
        i * self.target.num_lattice_points() + j
    }

    /// Variable values of the matrix of `f`.
    pub fn assignment(&self, f: &GradedHom) -> Vec<Scalar> {
        let n = self.target.num_lattice_points();
        (0..self.num_vars())
            .map(|v| f.matrix().get(v % n, v / n).clone())
            .collect()
    }

    pub fn vanish_at(&self, f: &GradedHom) -> bool {
        let values = self.assignment(f);
        self.polys.iter().all(|g| g.evaluate(f.field(), &values).is_zero())
    }

    pub fn to_json(&self) -> EquationsJson {
        let n = self.target.num_lattice_points();
        EquationsJson {
            vars: (0..self.num_vars())
                .map(|v| {
                    [
                        self.source.lattice_points()[v / n].clone(),
                        self.target.lattice_points()[v % n].clone(),
                    ]
                })
                .collect(),
            polys: self
                .polys
                .iter()
                .map(|g| {
                    g.terms
                        .iter()
                        .map(|(m, &c)| TermEntry {
                            monomial: m.clone(),
                            coeff: c,
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Expands `∏_{i ∈ multiset} Σ_j X_{ij} y_j` as a map from target sums to
/// integer polynomials in the `X` variables.
fn expand_product(multiset: &[usize], q: &LatticePolytope) -> BTreeMap<Vec<i64>, BTreeMap<Vec<usize>, i64>> {
    let n = q.num_lattice_points();
    let mut acc: BTreeMap<(Vec<i64>, Vec<usize>), i64> = BTreeMap::new();
    acc.insert((vec![0; q.ambient_dim()], Vec::new()), 1);
    for &i in multiset {
        let mut next = BTreeMap::new();
        for ((sum, mono), c) in &acc {
            for (j, y) in q.lattice_points().iter().enumerate() {
                let s: Vec<i64> = sum.iter().zip(y).map(|(a, b)| a + b).collect();
                let mut m = mono.clone();
                m.push(i * n + j);
                m.sort_unstable();
                *next.entry((s, m)).or_insert(0) += c;
            }
        }
        acc = next;
    }
    let mut out: BTreeMap<Vec<i64>, BTreeMap<Vec<usize>, i64>> = BTreeMap::new();
    for ((s, m), c) in acc {
        out.entry(s).or_default().insert(m, c);
    }
    out
}

/// Per relation and target monomial, the coefficient of `f(x^a) − f(x^b)`
/// as an integer polynomial; zeros are skipped.
fn relation_coefficients(rel: &BinomialRelation, q: &LatticePolytope) -> Vec<IntPoly> {
    let left = expand_product(&rel.left, q);
    let right = expand_product(&rel.right, q);
    let sums: BTreeSet<&Vec<i64>> = left.keys().chain(right.keys()).collect();
    sums.into_iter()
        .filter_map(|s| {
            let mut g = IntPoly::default();
            for (m, c) in left.get(s).into_iter().flatten() {
                *g.terms.entry(m.clone()).or_insert(0) += c;
            }
            for (m, c) in right.get(s).into_iter().flatten() {
                *g.terms.entry(m.clone()).or_insert(0) -= c;
            }
            g.terms.retain(|_, c| *c != 0);
            (!g.is_zero()).then_some(g)
        })
        .collect()
}

fn dedupe(polys: Vec<IntPoly>) -> Vec<IntPoly> {
    let mut seen = BTreeSet::new();
    polys.into_iter().filter(|g| seen.insert(g.clone())).collect()
}

/// Integer-coefficient equations from the relations of degree `≤ max_degree`.
pub fn hom_equations(p: &LatticePolytope, q: &LatticePolytope, max_degree: usize) -> HomEquations {
    let polys = binomial_relations(p, max_degree)
        .iter()
        .flat_map(|rel| relation_coefficients(rel, q))
        .collect();
    HomEquations {
        source: p.clone(),
        target: q.clone(),
        polys: dedupe(polys),
    }
}

/// The same equations generated with coefficients in `field` and lifted back
/// to integers (symmetric residues for a prime field).
pub fn hom_equations_over(p: &LatticePolytope, q: &LatticePolytope, max_degree: usize, field: Field) -> Vec<IntPoly> {
    let lift = |s: &Scalar| -> i64 {
        let b = s.to_bigint().expect("integral coefficient");
        let b = match field {
            Field::Prime(p) if b > BigInt::from(p / 2) => b - BigInt::from(p),
            _ => b,
        };
        i64::try_from(b).expect("small coefficient")
    };
    let mut polys = Vec::new();
    for rel in binomial_relations(p, max_degree) {
        let left = expand_product(&rel.left, q);
        let right = expand_product(&rel.right, q);
        let sums: BTreeSet<&Vec<i64>> = left.keys().chain(right.keys()).collect();
        for s in sums {
            let mut terms: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (m, c) in left.get(s).into_iter().flatten() {
                let e = terms.entry(m.clone()).or_insert_with(|| field.zero());
                *e = &*e + &field.from_i64(*c);
            }
            for (m, c) in right.get(s).into_iter().flatten() {
                let e = terms.entry(m.clone()).or_insert_with(|| field.zero());
                *e = &*e - &field.from_i64(*c);
            }
            let g = IntPoly {
                terms: terms
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), lift(c)))
                    .collect(),
            };
            if !g.is_zero() {
                polys.push(g);
            }
        }
    }
    dedupe(polys)
}

/// `m² − rank` of the Jacobian of the equations of `Hom(k[P], k[P])` at the
/// identity, over `field` and with relations up to `max_degree`.
pub fn tangent_dim_with(p: &LatticePolytope, max_degree: usize, field: Field) -> usize {
    let eqs = hom_equations(p, p, max_degree);
    let m = p.num_lattice_points();
    let nvars = m * m;
    let diagonal = |v: usize| v / m == v % m;
    let mut jac = ExactMatrix::zeros(field, eqs.polys.len(), nvars);
    for (r, g) in eqs.polys.iter().enumerate() {
        let mut row: BTreeMap<usize, i64> = BTreeMap::new();
        for (mono, &c) in &g.terms {
            for (pos, &v) in mono.iter().enumerate() {
                if pos > 0 && mono[pos - 1] == v {
                    continue;
                }
                let k = mono.iter().filter(|&&u| u == v).count();
                let mut rest = mono.clone();
                rest.remove(pos);
                if rest.iter().all(|&u| diagonal(u)) {
                    *row.entry(v).or_insert(0) += c * k as i64;
                }
            }
        }
        for (v, c) in row {
            jac.set(r, v, field.from_i64(c));
        }
    }
    nvars - jac.rank()
}

/// Tangent dimension of the automorphism group scheme at the identity over
/// ℚ, at the certified relation degree.
pub fn tangent_dim(p: &LatticePolytope) -> Result<usize> {
    Ok(tangent_dim_with(p, relation_degree(p)?, Field::Rational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    #[test]
    fn polynomial_source_has_no_equations() {
        let eqs = hom_equations(&catalog::simplex(2), &catalog::square(), 3);
        assert!(eqs.polys.is_empty());
    }

    #[test]
    fn square_to_segment() {
        let eqs = hom_equations(&catalog::square(), &catalog::simplex(1), 2);
        assert_eq!(eqs.polys.len(), 3);
        assert!(eqs.polys.iter().all(|g| g.is_homogeneous() && g.terms.keys().all(|m| m.len() == 2)));
    }

    #[test]
    fn square_to_square() {
        let eqs = hom_equations(&catalog::square(), &catalog::square(), 2);
        assert_eq!(eqs.polys.len(), 9);
    }

    #[test]
    fn integer_and_field_generation_agree() {
        let sq = catalog::square();
        let ints = hom_equations(&sq, &sq, 2).polys;
        assert_eq!(hom_equations_over(&sq, &sq, 2, Field::Rational), ints);
        assert_eq!(hom_equations_over(&sq, &sq, 2, Field::prime(5).unwrap()), ints);
    }

    #[test]
    fn derivative_of_square() {
        let g = IntPoly {
            terms: [(vec![0, 0], 3), (vec![0, 1], 2)].into_iter().collect(),
        };
        let d = g.derivative(0);
        assert_eq!(d.terms, [(vec![0], 6), (vec![1], 2)].into_iter().collect());
    }

    #[test]
    fn tangent_dimensions() {
        assert_eq!(tangent_dim(&catalog::square()).unwrap(), 7);
        assert_eq!(tangent_dim(&catalog::simplex(2)).unwrap(), 9);
        assert_eq!(tangent_dim(&catalog::t2()).unwrap(), 3);
    }
}
