//! Column structures, elementary and toric automorphisms, lattice
//! symmetries, and normal-form composition.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{ExactMatrix, Field, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{add, normalize_lattice, sub, AffineLatticeMap, LatticePolytope};
use crate::hom::GradedHom;

/// A column vector `v` with its base facet (an index into the facet list).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnStructure {
    pub v: Vec<i64>,
    pub base_facet: usize,
}

/// Whether every lattice point off facet `facet` moves by `v` into `P`.
pub fn is_column_with_facet(p: &LatticePolytope, v: &[i64], facet: usize) -> bool {
    let Some(f) = p.facet_list().get(facet) else {
        return false;
    };
    v.iter().any(|&c| c != 0)
        && v.len() == p.ambient_dim()
        && p.lattice_points()
            .iter()
            .filter(|x| !f.contains(x))
            .all(|x| p.contains(&add(x, v)))
}

/// All column vectors, sorted by `v`. Every column vector is a difference of
/// two lattice points, so scanning those differences against every facet is
/// exhaustive.
pub fn column_vectors(p: &LatticePolytope) -> Result<Vec<ColumnStructure>> {
    p.facets()?;
    let candidates: BTreeSet<Vec<i64>> = p
        .lattice_points()
        .iter()
        .tuple_combinations()
        .flat_map(|(a, b)| [sub(a, b), sub(b, a)])
        .collect();
    Ok(candidates
        .into_iter()
        .filter_map(|v| {
            (0..p.facet_list().len())
                .find(|&f| is_column_with_facet(p, &v, f))
                .map(|base_facet| ColumnStructure { v, base_facet })
        })
        .collect())
}

/// Largest `m` with `x + m·v ∈ L_P`.
pub fn height(p: &LatticePolytope, col: &ColumnStructure, x: &[i64]) -> Result<usize> {
    if p.point_index(x).is_none() {
        return Err(Error::NotALatticePoint(x.to_vec()));
    }
    let mut m = 0;
    let mut y = add(x, &col.v);
    while p.contains(&y) {
        m += 1;
        y = add(&y, &col.v);
    }
    Ok(m)
}

fn check_column(p: &LatticePolytope, col: &ColumnStructure) -> Result<()> {
    if is_column_with_facet(p, &col.v, col.base_facet) {
        Ok(())
    } else {
        Err(Error::NotAColumn(format!("{:?} with base facet {}", col.v, col.base_facet)))
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The elementary automorphism `x ↦ (1 + λv)^{ht_v(x)} x`.
pub fn elementary(p: &LatticePolytope, col: &ColumnStructure, lambda: &Scalar) -> Result<GradedHom> {
    check_column(p, col)?;
    let field = lambda.field();
    let m = p.num_lattice_points();
    let mut matrix = ExactMatrix::zeros(field, m, m);
    for (j, x) in p.lattice_points().iter().enumerate() {
        let ht = height(p, col, x)?;
        let mut y = x.clone();
        let mut power = field.one();
        for k in 0..=ht {
            let row = p.point_index(&y).expect("within height");
            matrix.set(row, j, &field.from_bigint(&binomial(ht, k)) * &power);
            power = &power * lambda;
            y = add(&y, &col.v);
        }
    }
    GradedHom::new(p.clone(), p.clone(), matrix)
}

fn ensure_normalized(p: &LatticePolytope) -> Result<()> {
    if p.ambient_dim() == p.dim() && p.is_lattice_normalized() {
        Ok(())
    } else {
        Err(Error::NotNormalized(format!("{p}")))
    }
}

/// The torus element `ξ`: the monomial `(x, 1)` is scaled by
/// `ξ_1^{x_1} ⋯ ξ_n^{x_n} · ξ_{n+1}`.
pub fn toric(p: &LatticePolytope, xi: &[Scalar]) -> Result<GradedHom> {
    ensure_normalized(p)?;
    let n = p.dim();
    if xi.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: xi.len(),
        });
    }
    if let Some(i) = xi.iter().position(Scalar::is_zero) {
        return Err(Error::ZeroTorusEntry(i));
    }
    let field = xi[0].field();
    let m = p.num_lattice_points();
    let mut matrix = ExactMatrix::zeros(field, m, m);
    for (j, x) in p.lattice_points().iter().enumerate() {
        let mut s = xi[n].clone();
        for (a, &e) in xi.iter().zip(x) {
            s = &s * &a.pow(e)?;
        }
        matrix.set(j, j, s);
    }
    GradedHom::new(p.clone(), p.clone(), matrix)
}

/// A lattice automorphism of `P` with the induced permutation of `L_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    /// The affine map, in normalized coordinates of `P`.
    pub map: AffineLatticeMap,
    /// `permutation[i]` is the index of the image of lattice point `i`.
    pub permutation: Vec<usize>,
}

impl Symmetry {
    pub fn to_hom(&self, p: &LatticePolytope, field: Field) -> Result<GradedHom> {
        let m = p.num_lattice_points();
        let mut matrix = ExactMatrix::zeros(field, m, m);
        for (j, &i) in self.permutation.iter().enumerate() {
            matrix.set(i, j, field.one());
        }
        GradedHom::new(p.clone(), p.clone(), matrix)
    }
}

/// Solves `A(b_i − b_0) = w_i − w_0` for an integral unimodular `A`.
fn solve_affine(base: &[Vec<i64>], images: &[Vec<i64>]) -> Option<AffineLatticeMap> {
    let k = base[0].len();
    let q = Field::Rational;
    let b: Vec<Vec<i64>> = base[1..].iter().map(|x| sub(x, &base[0])).collect();
    let w: Vec<Vec<i64>> = images[1..].iter().map(|x| sub(x, &images[0])).collect();
    // Columns of B and W are the difference vectors; A = W B^{-1}.
    let bm = ExactMatrix::from_i64_rows(q, &b).ok()?.transpose();
    let wm = ExactMatrix::from_i64_rows(q, &w).ok()?.transpose();
    let a = wm.mul(&bm.inverse()?).ok()?;
    let matrix: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| a.get(i, j).to_bigint().and_then(|x| i64::try_from(x).ok()))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let linear = AffineLatticeMap::new(matrix, vec![0; k]).ok()?;
    let translation = sub(&images[0], &linear.apply(&base[0]));
    let map = AffineLatticeMap::new(linear.matrix, translation).ok()?;
    map.is_unimodular().then_some(map)
}

/// All lattice automorphisms of `P`, identity first.
pub fn symmetries(p: &LatticePolytope) -> Vec<Symmetry> {
    let (n, to_ambient) = normalize_lattice(p);
    let k = n.dim();
    // lattice point i of P corresponds to lattice point pos[i] of N
    let pos: Vec<usize> = {
        let images: Vec<Vec<i64>> = n.lattice_points().iter().map(|y| to_ambient.apply(y)).collect();
        p.lattice_points()
            .iter()
            .map(|x| images.iter().position(|y| y == x).expect("normalization is a bijection"))
            .collect()
    };
    let mut maps: Vec<AffineLatticeMap> = if k == 0 {
        vec![AffineLatticeMap::identity(0)]
    } else {
        let verts = n.vertices();
        let mut base: Vec<Vec<i64>> = vec![verts[0].clone()];
        for v in &verts[1..] {
            let mut trial = base.clone();
            trial.push(v.clone());
            let diffs: Vec<Vec<i64>> = trial[1..].iter().map(|x| sub(x, &trial[0])).collect();
            if crate::arith::lattice::rank(&diffs) == trial.len() - 1 {
                base = trial;
            }
            if base.len() == k + 1 {
                break;
            }
        }
        let vertex_set: BTreeSet<&Vec<i64>> = verts.iter().collect();
        let mut found: BTreeSet<AffineLatticeMap> = BTreeSet::new();
        for images in verts.iter().cloned().permutations(k + 1) {
            if let Some(map) = solve_affine(&base, &images) {
                let mapped: BTreeSet<Vec<i64>> = verts.iter().map(|v| map.apply(v)).collect();
                if mapped.iter().collect::<BTreeSet<_>>() == vertex_set {
                    found.insert(map);
                }
            }
        }
        found.into_iter().collect()
    };
    let identity = AffineLatticeMap::identity(k);
    maps.sort_by_key(|m| *m != identity);
    let npos: Vec<usize> = {
        let mut inv = vec![0; pos.len()];
        for (i, &j) in pos.iter().enumerate() {
            inv[j] = i;
        }
        inv
    };
    maps.into_iter()
        .map(|map| {
            let permutation = pos
                .iter()
                .map(|&j| {
                    let image = map.apply(&n.lattice_points()[j]);
                    npos[n.point_index(&image).expect("symmetry preserves lattice points")]
                })
                .collect();
            Symmetry { map, permutation }
        })
        .collect()
}

/// Dimension of the automorphism group predicted from the column count.
pub fn predicted_gamma_dim(p: &LatticePolytope) -> Result<usize> {
    Ok(column_vectors(p)?.len() + p.dim() + 1)
}

/// The permutation of `L_P` induced by a lattice map, if it is a symmetry.
pub fn symmetry_from_map(p: &LatticePolytope, map: &AffineLatticeMap) -> Result<Symmetry> {
    ensure_normalized(p)?;
    if map.source_dim() != p.ambient_dim() || !map.is_unimodular() {
        return Err(Error::InvalidMap("not a unimodular self-map".into()));
    }
    let permutation: Vec<usize> = p
        .lattice_points()
        .iter()
        .map(|x| p.point_index(&map.apply(x)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidMap("image leaves the polytope".into()))?;
    if permutation.iter().collect::<BTreeSet<_>>().len() != permutation.len() {
        return Err(Error::InvalidMap("not a bijection".into()));
    }
    Ok(Symmetry {
        map: map.clone(),
        permutation,
    })
}

/// One factor `α_i` of the normal form: elementaries sharing a base facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormBlock {
    pub facet: usize,
    pub lambdas: Vec<(Vec<i64>, Scalar)>,
}

/// The commuting product of the elementaries of one block.
pub fn block_automorphism(p: &LatticePolytope, block: &NormalFormBlock, field: Field) -> Result<GradedHom> {
    let mut acc = GradedHom::identity(p, field);
    for (v, lambda) in &block.lambdas {
        let col = ColumnStructure {
            v: v.clone(),
            base_facet: block.facet,
        };
        acc = acc.compose(&elementary(p, &col, lambda)?)?;
    }
    Ok(acc)
}

/// `α_1 ∘ ⋯ ∘ α_r ∘ τ ∘ σ` with the facet ordering of the normal form checked.
pub fn compose_normal_form(
    p: &LatticePolytope,
    field: Field,
    sigma: Option<&AffineLatticeMap>,
    tau: Option<&[Scalar]>,
    blocks: &[NormalFormBlock],
) -> Result<GradedHom> {
    let mut seen = BTreeSet::new();
    for b in blocks {
        if b.facet >= p.facet_list().len() {
            return Err(Error::NotAFace(format!("facet index {}", b.facet)));
        }
        if !seen.insert(b.facet) {
            return Err(Error::RepeatedFacet(b.facet));
        }
    }
    for (a, b) in blocks.iter().tuple_windows() {
        let (na, nb) = (
            p.facet_lattice_points(a.facet).len(),
            p.facet_lattice_points(b.facet).len(),
        );
        if na > nb {
            return Err(Error::OrderingViolation(format!(
                "facet {} has {na} lattice points, facet {} only {nb}",
                a.facet, b.facet
            )));
        }
    }
    let mut acc = GradedHom::identity(p, field);
    for b in blocks {
        acc = acc.compose(&block_automorphism(p, b, field)?)?;
    }
    if let Some(xi) = tau {
        acc = acc.compose(&toric(p, xi)?)?;
    }
    if let Some(map) = sigma {
        acc = acc.compose(&symmetry_from_map(p, map)?.to_hom(p, field)?)?;
    }
    Ok(acc)
}
