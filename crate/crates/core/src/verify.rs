//! The acceptance checks, each run to a pass/fail report.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{ExactMatrix, Field, Scalar};
use crate::automorphism::{block_automorphism, column_vectors, elementary, predicted_gamma_dim, ColumnStructure, NormalFormBlock};
use crate::error::{Error, Result};
use crate::geometry::{catalog, LatticePolytope};
use crate::hom::{hom_equations, hom_equations_over, is_homomorphism, is_idempotent, relation_degree, tangent_dim, GradedHom};
use crate::sample;
use crate::semigroup::is_generated_in_degree;
use crate::tame::{
    base_inclusion, decompose_veronese, detect_segmental_fibrations, evaluate_recipe, face_inclusion, face_retraction,
    factor_affine, fibration_retraction, homothetic_blowup,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({} ms) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.millis,
            self.detail
        )
    }
}

fn run(id: u8, title: &str, check: impl FnOnce() -> Result<(bool, String)>) -> CriterionReport {
    let start = Instant::now();
    let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport {
        id,
        title: title.to_string(),
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn q() -> Field {
    Field::Rational
}

pub fn column_counts() -> CriterionReport {
    run(1, "column vector counts", || {
        let mut details = Vec::new();
        let mut ok = true;
        for (p, expected) in [(catalog::square(), 4), (catalog::t1(), 5), (catalog::t2(), 0)] {
            let start = Instant::now();
            let count = column_vectors(&p)?.len();
            let fast = start.elapsed().as_secs_f64() < 1.0;
            ok &= count == expected && fast;
            details.push(format!("{}={count}", p.name()));
        }
        Ok((ok, details.join(" ")))
    })
}

pub fn dimension_formula() -> CriterionReport {
    run(2, "tangent dimension equals #Col + dim + 1", || {
        let start = Instant::now();
        let mut ok = true;
        let mut details = Vec::new();
        for (p, expected) in catalog::standard().iter().zip([4, 9, 4, 7, 8, 3]) {
            let t = tangent_dim(p)?;
            let predicted = predicted_gamma_dim(p)?;
            ok &= t == expected && predicted == expected;
            details.push(format!("{}={t}/{predicted}", p.name()));
        }
        ok &= start.elapsed().as_secs_f64() < 30.0;
        Ok((ok, details.join(" ")))
    })
}

fn same_base_pairs(cols: &[ColumnStructure]) -> Vec<(&ColumnStructure, &ColumnStructure)> {
    let mut out = Vec::new();
    for (i, a) in cols.iter().enumerate() {
        for b in &cols[i + 1..] {
            if a.base_facet == b.base_facet {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn elementary_laws() -> CriterionReport {
    run(3, "one-parameter, commutativity and inverse laws", || {
        let values: Vec<Scalar> = [-2, -1, 0, 1, 2].iter().map(|&k| q().from_i64(k)).collect();
        let (mut cases, mut failures) = (0usize, 0usize);
        for p in catalog::standard() {
            let cols = column_vectors(&p)?;
            for col in &cols {
                for l in &values {
                    for m in &values {
                        let lhs = elementary(&p, col, l)?.compose(&elementary(&p, col, m)?)?;
                        cases += 1;
                        failures += usize::from(lhs != elementary(&p, col, &(l + m))?);
                    }
                }
            }
            for (a, b) in same_base_pairs(&cols) {
                for l in &values {
                    for m in &values {
                        let ab = elementary(&p, a, l)?.compose(&elementary(&p, b, m)?)?;
                        let ba = elementary(&p, b, m)?.compose(&elementary(&p, a, l)?)?;
                        cases += 1;
                        failures += usize::from(ab != ba);
                    }
                }
            }
            let mut facets: BTreeMap<usize, Vec<Vec<i64>>> = BTreeMap::new();
            for c in &cols {
                facets.entry(c.base_facet).or_default().push(c.v.clone());
            }
            for (facet, vs) in facets {
                for l in &values {
                    let block = |sign: &Scalar| NormalFormBlock {
                        facet,
                        lambdas: vs.iter().map(|v| (v.clone(), sign * l)).collect(),
                    };
                    let fwd = block_automorphism(&p, &block(&q().one()), q())?;
                    let back = block_automorphism(&p, &block(&q().from_i64(-1)), q())?;
                    cases += 1;
                    failures += usize::from(back.compose(&fwd)? != GradedHom::identity(&p, q()));
                }
            }
        }
        Ok((failures == 0, format!("{cases} cases, {failures} failures")))
    })
}

/// Homomorphisms `SQ → Q` over `F_5` from three families: uniform random
/// matrices, monomial maps with random scalars, and automorphisms or face
/// maps.
fn f5_candidates(seed: u64, count: usize) -> Result<Vec<GradedHom>> {
    let f5 = Field::prime(5)?;
    let mut r = rng(seed, 4);
    let sq = catalog::square();
    let d1 = catalog::simplex(1);
    let edge = LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0]])?;
    let to_d1 = {
        let e = face_retraction(&sq, &edge, f5)?;
        GradedHom::new(sq.clone(), d1.clone(), e.matrix().clone())?
    };
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let target = if r.gen_bool(0.5) { sq.clone() } else { d1.clone() };
        let m = target.num_lattice_points();
        let f = match i % 3 {
            0 => {
                let mut mat = ExactMatrix::zeros(f5, m, 4);
                for j in 0..4 {
                    for k in 0..m {
                        mat.set(k, j, f5.from_i64(r.gen_range(0..5)));
                    }
                }
                GradedHom::new(sq.clone(), target, mat)?
            }
            1 => {
                let mut mat = ExactMatrix::zeros(f5, m, 4);
                for j in 0..4 {
                    mat.set(r.gen_range(0..m), j, f5.from_i64(r.gen_range(1..5)));
                }
                GradedHom::new(sq.clone(), target, mat)?
            }
            _ => {
                let auto = sample::automorphism(&mut r, &sq, f5)?;
                if target == sq {
                    auto
                } else {
                    let flip = sample::automorphism(&mut r, &d1, f5)?;
                    flip.compose(&to_d1)?.compose(&auto)?
                }
            }
        };
        out.push(f);
    }
    Ok(out)
}

pub fn integer_definedness(seed: u64) -> CriterionReport {
    run(4, "equations are defined over the integers", || {
        let sq = catalog::square();
        let f5 = Field::prime(5)?;
        let mut ok = true;
        for target in [catalog::simplex(1), sq.clone()] {
            let ints = hom_equations(&sq, &target, 2).polys;
            ok &= hom_equations_over(&sq, &target, 2, Field::Rational) == ints;
            ok &= hom_equations_over(&sq, &target, 2, f5) == ints;
        }
        let d = relation_degree(&sq)?;
        let (mut homs, mut disagreements) = (0, 0);
        for f in f5_candidates(seed, 200)? {
            let eqs = hom_equations(&sq, f.target(), d);
            let by_equations = eqs.vanish_at(&f);
            let by_relations = is_homomorphism(&f, d);
            homs += usize::from(by_relations);
            disagreements += usize::from(by_equations != by_relations);
        }
        ok &= disagreements == 0;
        Ok((ok, format!("200 maps, {homs} homomorphisms, {disagreements} disagreements")))
    })
}

pub fn quadratic_generation() -> CriterionReport {
    run(5, "quadratic generation", || {
        let sq = is_generated_in_degree(&catalog::square(), 2, 3);
        let t2 = is_generated_in_degree(&catalog::t2(), 2, 3);
        let t2x2 = is_generated_in_degree(&catalog::t2().dilate(2)?, 2, 3);
        Ok((sq && !t2 && t2x2, format!("SQ={sq} T2={t2} 2T2={t2x2}")))
    })
}

fn down_column(p: &LatticePolytope) -> Result<ColumnStructure> {
    column_vectors(p)?
        .into_iter()
        .find(|c| c.v == vec![-1])
        .ok_or_else(|| Error::NotAColumn(format!("-1 on {p}")))
}

pub fn blowup_coherence(seed: u64) -> CriterionReport {
    run(6, "blow-up coherence", || {
        let mut ok = true;
        let d1 = catalog::simplex(1);
        for c in [2usize, 3] {
            let cd1 = catalog::segment(c as i64);
            for l in [1, 2] {
                let lambda = q().from_i64(l);
                let lhs = homothetic_blowup(&elementary(&d1, &down_column(&d1)?, &lambda)?, c)?;
                let rhs = elementary(&cd1, &down_column(&cd1)?, &lambda)?;
                ok &= lhs.matrix() == rhs.matrix();
            }
        }
        let mut r = rng(seed, 6);
        let catalog = catalog::standard();
        let mut failures = 0;
        for i in 0..50 {
            let p = &catalog[i % catalog.len()];
            let f = sample::automorphism(&mut r, p, q())?;
            let g = sample::automorphism(&mut r, p, q())?;
            let d = relation_degree(p)?;
            if !is_homomorphism(&f, d) || !is_homomorphism(&g, d) {
                failures += 1;
                continue;
            }
            let c = if p.num_lattice_points() <= 3 { 3 } else { 2 };
            let lhs = homothetic_blowup(&g.compose(&f)?, c)?;
            let rhs = homothetic_blowup(&g, c)?.compose(&homothetic_blowup(&f, c)?)?;
            failures += usize::from(lhs != rhs);
        }
        ok &= failures == 0;
        Ok((ok, format!("50 pairs, {failures} failures")))
    })
}

pub fn veronese_decomposition(seed: u64) -> CriterionReport {
    run(7, "decomposition of maps out of k[cΔ_n]", || {
        let mut r = rng(seed, 7);
        let mut failures = Vec::new();
        for i in 0..100 {
            let n = 1 + i % 2;
            let recipe = sample::veronese_recipe(&mut r, n, 2, q())?;
            let f = evaluate_recipe(&recipe, q())?;
            let back = decompose_veronese(&f).and_then(|d| d.recompose(f.source(), f.target()));
            if back.as_ref() != Ok(&f) {
                failures.push(i);
            }
        }
        let two = catalog::segment(2);
        let fixture = |rows: &[Vec<i64>]| -> Result<GradedHom> {
            GradedHom::new(two.clone(), two.clone(), ExactMatrix::from_i64_rows(q(), rows)?)
        };
        let zero = decompose_veronese(&fixture(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]])?);
        let twisted = decompose_veronese(&fixture(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])?);
        let zero_ok = matches!(zero, Err(Error::ZeroGeneratorImage(_)));
        let root_ok = matches!(twisted, Err(Error::ScalarRootMissing { .. }));
        Ok((
            failures.is_empty() && zero_ok && root_ok,
            format!(
                "100 maps, {} failures; ZeroGeneratorImage fixture {}; ScalarRootMissing fixture {}",
                failures.len(),
                if zero_ok { "ok" } else { "missed" },
                if root_ok { "ok" } else { "missed" }
            ),
        ))
    })
}

/// Barycentric coordinates of the lattice points of `cΔ_n`.
pub fn compositions(c: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![c]];
    }
    (0..=c)
        .flat_map(|a| {
            compositions(c - a, n - 1).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

pub fn affine_round_trip(seed: u64) -> CriterionReport {
    run(8, "integral affine factorization", || {
        let mut r = rng(seed, 8);
        let mut failures = 0;
        for _ in 0..100 {
            let c = r.gen_range(1..=3);
            let n = r.gen_range(1..=2);
            let d = r.gen_range(1..=3);
            let v: Vec<i64> = (0..d).map(|_| r.gen_range(0..=3)).collect();
            let beta: Vec<Vec<i64>> = (0..=n).map(|_| (0..d).map(|_| r.gen_range(0..=3)).collect()).collect();
            let alpha: BTreeMap<Vec<usize>, Vec<i64>> = compositions(c, n)
                .into_iter()
                .map(|a| {
                    let mut val = v.clone();
                    for (ai, b) in a.iter().zip(&beta) {
                        for (x, y) in val.iter_mut().zip(b) {
                            *x += *ai as i64 * y;
                        }
                    }
                    (a, val)
                })
                .collect();
            match factor_affine(c, n, &alpha) {
                Ok(fac) => failures += usize::from(alpha.iter().any(|(a, val)| &fac.evaluate(a) != val)),
                Err(_) => failures += 1,
            }
        }
        let midpoint: BTreeMap<Vec<usize>, Vec<i64>> =
            [(vec![2, 0], vec![1, 0]), (vec![0, 2], vec![0, 1])].into_iter().collect();
        let fixture_ok = matches!(factor_affine(2, 1, &midpoint), Err(Error::NotIntegralAffine(_)));
        Ok((
            failures == 0 && fixture_ok,
            format!("100 maps, {failures} failures; midpoint fixture {}", if fixture_ok { "ok" } else { "missed" }),
        ))
    })
}

fn square_naively(m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows();
    let field = m.field();
    let mut out = ExactMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = field.zero();
            for k in 0..n {
                s += &(m.get(i, k) * m.get(k, j));
            }
            out.set(i, j, s);
        }
    }
    out
}

pub fn retraction_laws(seed: u64) -> CriterionReport {
    run(9, "retraction and idempotent laws", || {
        let mut ok = true;
        let mut faces = 0;
        for p in catalog::standard() {
            for f in p.faces() {
                let pi = face_retraction(&p, &f, q())?;
                let iota = face_inclusion(&p, &f, q())?;
                ok &= pi.compose(&iota)? == GradedHom::identity(&f, q());
                faces += 1;
            }
        }
        let mut fibrations = 0;
        for p in [catalog::square(), catalog::segment_times_double_segment()] {
            let fibs = detect_segmental_fibrations(&p)?;
            ok &= !fibs.is_empty();
            for fib in &fibs {
                let e = base_inclusion(&p, fib, q())?.compose(&fibration_retraction(&p, fib, q())?)?;
                ok &= is_idempotent(&e)?;
                fibrations += 1;
            }
        }
        let mut r = rng(seed, 9);
        let catalog = catalog::standard();
        let (mut idempotents, mut disagreements) = (0, 0);
        for i in 0..100 {
            let p = &catalog[i % catalog.len()];
            let m = p.num_lattice_points();
            let f = if i % 2 == 0 {
                let facesp = p.faces();
                let face = &facesp[r.gen_range(0..facesp.len())];
                let e = face_inclusion(p, face, q())?.compose(&face_retraction(p, face, q())?)?;
                let a = sample::automorphism(&mut r, p, q())?;
                let inv = GradedHom::new(p.clone(), p.clone(), a.matrix().inverse().ok_or(Error::Degenerate("singular".into()))?)?;
                a.compose(&e)?.compose(&inv)?
            } else {
                GradedHom::new(p.clone(), p.clone(), sample::matrix(&mut r, q(), m, m, 0.3))?
            };
            let direct = square_naively(f.matrix()) == *f.matrix();
            let claimed = is_idempotent(&f)?;
            idempotents += usize::from(claimed);
            disagreements += usize::from(direct != claimed);
        }
        ok &= disagreements == 0;
        Ok((
            ok,
            format!("{faces} faces, {fibrations} fibrations, 100 endomorphisms ({idempotents} idempotent, {disagreements} disagreements)"),
        ))
    })
}

/// All nine checks in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        column_counts(),
        dimension_formula(),
        elementary_laws(),
        integer_definedness(seed),
        quadratic_generation(),
        blowup_coherence(seed),
        veronese_decomposition(seed),
        affine_round_trip(seed),
        retraction_laws(seed),
    ]
}
