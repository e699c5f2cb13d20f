//! Seeded random generators for homomorphisms, automorphisms and recipes.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use crate::arith::{ExactMatrix, Field, LaurentPoly, Scalar};
use crate::automorphism::{column_vectors, elementary, symmetries, toric};
use crate::error::Result;
use crate::geometry::{catalog, LatticePolytope};
use crate::hom::GradedHom;
use crate::tame::{free_chain, TameRecipe};

/// A nonzero scalar `±1, ±2, ±3`.
pub fn unit<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    let k = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    field.from_i64(k)
}

/// A random automorphism of a lattice-normalized `P`: a symmetry, a torus
/// element and up to three elementaries.
pub fn automorphism<R: Rng>(rng: &mut R, p: &LatticePolytope, field: Field) -> Result<GradedHom> {
    let syms = symmetries(p);
    let sigma = syms.choose(rng).expect("identity is a symmetry").to_hom(p, field)?;
    let xi: Vec<Scalar> = (0..=p.dim()).map(|_| unit(rng, field)).collect();
    let mut acc = toric(p, &xi)?.compose(&sigma)?;
    let cols = column_vectors(p)?;
    for _ in 0..rng.gen_range(0..=3) {
        if let Some(col) = cols.choose(rng) {
            let lambda = field.from_i64(rng.gen_range(-2..=2));
            acc = elementary(p, col, &lambda)?.compose(&acc)?;
        }
    }
    Ok(acc)
}

/// A random matrix with entries in `-2..=2` and the given density.
pub fn matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize, density: f64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, field.from_i64(rng.gen_range(-2..=2)));
            }
        }
    }
    m
}

/// A nonzero polynomial supported on lattice points of `q`.
pub fn polynomial<R: Rng>(rng: &mut R, q: &LatticePolytope, field: Field, max_terms: usize) -> LaurentPoly {
    loop {
        let mut f = LaurentPoly::zero(field, q.ambient_dim());
        for _ in 0..rng.gen_range(1..=max_terms) {
            let y = q.lattice_points().choose(rng).expect("nonempty").clone();
            f.add_term(y, unit(rng, field));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random tame recipe for a map out of `k[cΔ_n]`: the `c`-th blow-up of a
/// free map `k[Δ_n] → k[Q]` with random images, sometimes followed by an
/// automorphism of `cQ`.
pub fn veronese_recipe<R: Rng>(rng: &mut R, n: usize, c: usize, field: Field) -> Result<TameRecipe> {
    let targets = [catalog::simplex(1), catalog::segment(2), catalog::square(), catalog::simplex(2), catalog::t1()];
    let q = targets.choose(rng).expect("nonempty").clone();
    let images: Vec<LaurentPoly> = (0..=n).map(|_| polynomial(rng, &q, field, 3)).collect();
    let blown = TameRecipe::new("homothetic_blowup", json!({"c": c}), vec![free_chain(n, &q, &images)]);
    if rng.gen_bool(0.5) {
        let cq = q.dilate(c as i64)?;
        let alpha = automorphism(rng, &cq, field)?;
        Ok(TameRecipe::new("compose", serde_json::Value::Null, vec![TameRecipe::hom(&alpha), blown]))
    } else {
        Ok(blown)
    }
}
