use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::geometry::{add, is_pyramid, AffineLatticeMap, LatticePolytope};
use crate::hom::GradedHom;
use crate::semigroup::{extend_sumset, sumset_with_witnesses, Sumset};

fn nonzero_images(f: &GradedHom) -> Result<Vec<LaurentPoly>> {
    let images = f.images();
    if let Some(j) = images.iter().position(LaurentPoly::is_zero) {
        return Err(Error::ZeroGeneratorImage(format!("{:?}", f.source().lattice_points()[j])));
    }
    Ok(images)
}

/// The `c`-th homothetic blow-up `k[cP] → k[cQ]`, `x ↦ f(x + z) / f(z)`,
/// with the witness search bounded by `c · #L_P`.
pub fn homothetic_blowup(f: &GradedHom, c: usize) -> Result<GradedHom> {
    homothetic_blowup_with_bound(f, c, c * f.source().num_lattice_points())
}

/// As [`homothetic_blowup`], searching witnesses `z` up to degree `bound`.
///
/// `z` is the lex-first element of the smallest degree `e` with `x + z` in
/// `S_P`; both `f(x + z)` and `f(z)` are evaluated on lex-first factorizations.
pub fn homothetic_blowup_with_bound(f: &GradedHom, c: usize, bound: usize) -> Result<GradedHom> {
    if c == 0 {
        return Err(Error::InvalidInput("blow-up factor must be positive".into()));
    }
    let p = f.source();
    if !p.is_lattice_normalized() {
        return Err(Error::NotNormalized(format!("{p}")));
    }
    nonzero_images(f)?;
    let cp = p.dilate(c as i64)?;
    let cq = f.target().dilate(c as i64)?;
    let mut layers: Vec<Sumset> = vec![sumset_with_witnesses(p, 0)];
    let mut images = Vec::with_capacity(cp.num_lattice_points());
    for x in cp.lattice_points() {
        let mut witness = None;
        for e in 0..=bound {
            while layers.len() <= c + e {
                let next = extend_sumset(p, layers.last().unwrap());
                layers.push(next);
            }
            witness = layers[e].iter().find_map(|(z, wz)| {
                layers[c + e].get(&add(x, z)).map(|ws| (wz.clone(), ws.clone()))
            });
            if witness.is_some() {
                break;
            }
        }
        let (wz, ws) = witness.ok_or_else(|| Error::WitnessNotFound {
            point: x.clone(),
            bound,
        })?;
        images.push(f.image_of_product(&ws).exact_div(&f.image_of_product(&wz))?);
    }
    GradedHom::from_images(cp, cq, &images)
}

/// `f ⋆ g : x ↦ f(x)·g(x)` with the degree shift dropped; every
/// `N(f(x)) + N(g(x))` must lie in the common target.
pub fn minkowski_star(f: &GradedHom, g: &GradedHom) -> Result<GradedHom> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::PolytopeMismatch("star needs equal sources and targets".into()));
    }
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), g.field())));
    }
    let q = f.target();
    let mut images = Vec::new();
    for (j, x) in f.source().lattice_points().iter().enumerate() {
        let (a, b) = (f.image(j), g.image(j));
        let inside = a
            .support()
            .iter()
            .cartesian_product(b.support().iter())
            .all(|(u, v)| q.contains(&add(u, v)));
        if !inside {
            return Err(Error::NewtonContainmentViolated(x.clone()));
        }
        images.push(a.mul(&b)?);
    }
    GradedHom::from_images(f.source().clone(), q.clone(), &images)
}

/// Extends `f_0 : k[P_0] → k[Q]` to the lattice pyramid `P` over `P_0` with
/// apex `v ↦ q`. Without a base map `P` must be a single point.
pub fn free_extension(
    base_map: Option<&GradedHom>,
    p: &LatticePolytope,
    apex: &[i64],
    target: &LatticePolytope,
    q: &LaurentPoly,
) -> Result<GradedHom> {
    let pyramid = is_pyramid(p)
        .into_iter()
        .find(|py| py.apex == apex)
        .ok_or_else(|| Error::NotAPyramid(format!("{p} with apex {apex:?}")))?;
    match (&pyramid.base, base_map) {
        (None, None) => {}
        (Some(b), Some(f0)) => {
            if f0.source() != b {
                return Err(Error::PolytopeMismatch(format!("base map source {} is not the base {b}", f0.source())));
            }
            if f0.target() != target {
                return Err(Error::PolytopeMismatch(format!("base map target {} differs from {target}", f0.target())));
            }
            if f0.field() != q.field() {
                return Err(Error::FieldMismatch(format!("{} vs {}", f0.field(), q.field())));
            }
        }
        (Some(_), None) => return Err(Error::NotAPyramid(format!("{p} needs a map on its base"))),
        (None, Some(_)) => return Err(Error::NotAPyramid(format!("{p} is a point and has no base"))),
    }
    let images = p
        .lattice_points()
        .iter()
        .map(|x| match base_map {
            Some(f0) if x.as_slice() != apex => f0.image_of(x),
            _ => Ok(q.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    GradedHom::from_images(p.clone(), target.clone(), &images)
}

/// Arguments of a polytope change; absent entries keep the original data.
///
/// `source` is a subpolytope `P' ⊆ P`, `target` a polytope `Q'` containing
/// every image (in the same or a larger ambient space, padded by zeros), and
/// the maps are unimodular lattice isomorphisms applied afterwards.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeChange {
    #[serde(default)]
    pub source: Option<LatticePolytope>,
    #[serde(default)]
    pub target: Option<LatticePolytope>,
    #[serde(default)]
    pub source_map: Option<AffineLatticeMap>,
    #[serde(default)]
    pub target_map: Option<AffineLatticeMap>,
}

fn map_exponents(f: &LaurentPoly, dim: usize, map: impl Fn(&[i64]) -> Vec<i64>) -> Result<LaurentPoly> {
    LaurentPoly::from_terms(f.field(), dim, f.terms().map(|(e, c)| (map(e), c.clone())))
}

fn check_unimodular(map: &AffineLatticeMap, dim: usize) -> Result<()> {
    if map.source_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: map.source_dim(),
        });
    }
    if !map.is_unimodular() {
        return Err(Error::InvalidMap("polytope change needs a unimodular map".into()));
    }
    Ok(())
}

pub fn polytope_change(f: &GradedHom, change: &PolytopeChange) -> Result<GradedHom> {
    let src = change.source.clone().unwrap_or_else(|| f.source().clone());
    if src.ambient_dim() != f.source().ambient_dim() || !f.source().contains_polytope(&src) {
        return Err(Error::PolytopeMismatch(format!("{src} is not contained in {}", f.source())));
    }
    let tgt = change.target.clone().unwrap_or_else(|| f.target().clone());
    let d = f.target().ambient_dim();
    if tgt.ambient_dim() < d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: tgt.ambient_dim(),
        });
    }
    let pad = tgt.ambient_dim() - d;
    let mut images: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    for x in src.lattice_points() {
        let img = map_exponents(&f.image_of(x)?, tgt.ambient_dim(), |e| {
            e.iter().copied().chain(std::iter::repeat_n(0, pad)).collect()
        })?;
        images.insert(x.clone(), img);
    }
    let (src, images) = match &change.source_map {
        None => (src, images),
        Some(m) => {
            check_unimodular(m, src.ambient_dim())?;
            let moved = images.into_iter().map(|(x, img)| (m.apply(&x), img)).collect();
            (m.image(&src)?, moved)
        }
    };
    let (tgt, images) = match &change.target_map {
        None => (tgt, images),
        Some(m) => {
            check_unimodular(m, tgt.ambient_dim())?;
            let moved = images
                .into_iter()
                .map(|(x, img)| Ok((x, map_exponents(&img, m.target_dim(), |e| m.apply(e))?)))
                .collect::<Result<_>>()?;
            (m.image(&tgt)?, moved)
        }
    };
    let ordered: Vec<LaurentPoly> = src.lattice_points().iter().map(|x| images[x].clone()).collect();
    GradedHom::from_images(src, tgt, &ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ExactMatrix, Field};
    use crate::geometry::catalog;
    use crate::hom::is_homomorphism;

    fn q() -> Field {
        Field::Rational
    }

    fn mono(e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(q(), e.to_vec())
    }

    #[test]
    fn blowup_of_the_identity_is_the_identity() {
        for p in [catalog::simplex(1), catalog::square(), catalog::t2()] {
            let id = GradedHom::identity(&p, q());
            let b = homothetic_blowup(&id, 2).unwrap();
            assert_eq!(b, GradedHom::identity(&p.dilate(2).unwrap(), q()));
        }
    }

    #[test]
    fn blowup_of_a_scaling() {
        // x_0 ↦ m_0, x_1 ↦ 2 m_1 on Δ_1 blows up to u_b ↦ 2^b m_b
        let d1 = catalog::simplex(1);
        let m = ExactMatrix::from_i64_rows(q(), &[vec![1, 0], vec![0, 2]]).unwrap();
        let f = GradedHom::new(d1.clone(), d1, m).unwrap();
        let b = homothetic_blowup(&f, 2).unwrap();
        let expected = ExactMatrix::from_i64_rows(q(), &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]]).unwrap();
        assert_eq!(b.matrix(), &expected);
    }

    #[test]
    fn blowup_rejects_zero_images() {
        let d1 = catalog::simplex(1);
        let m = ExactMatrix::from_i64_rows(q(), &[vec![1, 0], vec![0, 0]]).unwrap();
        let f = GradedHom::new(d1.clone(), d1, m).unwrap();
        assert!(matches!(homothetic_blowup(&f, 2), Err(Error::ZeroGeneratorImage(_))));
    }

    #[test]
    fn star_into_a_double_segment() {
        let d1 = catalog::simplex(1);
        let two = catalog::segment(2);
        let f = GradedHom::from_images(d1.clone(), two.clone(), &[mono(&[0]), mono(&[1])]).unwrap();
        let s = minkowski_star(&f, &f).unwrap();
        assert_eq!(s.images(), vec![mono(&[0]), mono(&[2])]);
        let g = GradedHom::from_images(d1, two, &[mono(&[1]), mono(&[2])]).unwrap();
        assert_eq!(minkowski_star(&g, &g), Err(Error::NewtonContainmentViolated(vec![1])));
    }

    #[test]
    fn free_extensions_build_maps_out_of_the_segment() {
        let sq = catalog::square();
        let pt = LatticePolytope::new(1, vec![vec![0]]).unwrap();
        let d1 = catalog::simplex(1);
        let a = mono(&[0, 0]).add(&mono(&[1, 1])).unwrap();
        let b = mono(&[1, 0]);
        let f0 = free_extension(None, &pt, &[0], &sq, &a).unwrap();
        let f = free_extension(Some(&f0), &d1, &[1], &sq, &b).unwrap();
        assert_eq!(f.images(), vec![a, b]);
        assert!(is_homomorphism(&f, 3));
        assert!(matches!(
            free_extension(None, &sq, &[0, 0], &sq, &mono(&[0, 0])),
            Err(Error::NotAPyramid(_))
        ));
    }

    #[test]
    fn restriction_and_transport() {
        let sq = catalog::square();
        let id = GradedHom::identity(&sq, q());
        let edge = LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let r = polytope_change(
            &id,
            &PolytopeChange {
                source: Some(edge.clone()),
                target: Some(edge.clone()),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r, GradedHom::identity(&edge, q()));
        let bad = polytope_change(
            &id,
            &PolytopeChange {
                target: Some(edge),
                ..Default::default()
            },
        );
        assert!(matches!(bad, Err(Error::ImageEscapesTarget { .. })));
        let swap = AffineLatticeMap::new(vec![vec![0, 1], vec![1, 0]], vec![0, 0]).unwrap();
        let t = polytope_change(
            &id,
            &PolytopeChange {
                source_map: Some(swap.clone()),
                target_map: Some(swap),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(t, id);
    }
}
