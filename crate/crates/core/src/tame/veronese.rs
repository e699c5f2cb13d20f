use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::recipe::TameRecipe;
use crate::arith::gcd::{monomial_content, poly_gcd_all};
use crate::arith::{lattice, LaurentPoly, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{add, sub, AffineLatticeMap, LatticePolytope};
use crate::hom::GradedHom;

/// `α(x) = v + Σ a_i(x) β(x_i)` on `L_{cΔ_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFactorization {
    pub v: Vec<i64>,
    pub beta: Vec<Vec<i64>>,
}

fn vertex_key(n: usize, c: usize, i: usize) -> Vec<usize> {
    (0..=n).map(|j| if i == j { c } else { 0 }).collect()
}

/// Splits a map `α` on the lattice points of `cΔ_n`, keyed by barycentric
/// coordinates `(a_0, …, a_n)` with `Σ a_i = c`, as `v + c·β`.
///
/// Only the vertex values are required; any other supplied value must agree
/// with the affine extension.
pub fn factor_affine(c: usize, n: usize, alpha: &BTreeMap<Vec<usize>, Vec<i64>>) -> Result<AffineFactorization> {
    if c == 0 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    let vertex_values = (0..=n)
        .map(|i| {
            alpha
                .get(&vertex_key(n, c, i))
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("no value at vertex {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = vertex_values[0].len();
    if vertex_values.iter().chain(alpha.values()).any(|a| a.len() != d) {
        return Err(Error::InvalidInput("values of different lengths".into()));
    }
    let v: Vec<i64> = (0..d)
        .map(|k| vertex_values.iter().map(|a| a[k]).min().unwrap())
        .collect();
    let ci = c as i64;
    let beta = vertex_values
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let diff = sub(a, &v);
            if diff.iter().any(|x| x % ci != 0) {
                return Err(Error::NotIntegralAffine(format!(
                    "vertex {i} value {a:?} is not v + {c}·β with integral β; some lattice point has a non-integral image"
                )));
            }
            Ok(diff.iter().map(|x| x / ci).collect())
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let f = AffineFactorization { v, beta };
    for (key, value) in alpha {
        if key.len() != n + 1 || key.iter().sum::<usize>() != c {
            return Err(Error::InvalidInput(format!("{key:?} is not a point of {c}·Δ_{n}")));
        }
        if &f.evaluate(key) != value {
            return Err(Error::NotIntegralAffine(format!(
                "value {value:?} at {key:?} differs from the affine extension {:?}",
                f.evaluate(key)
            )));
        }
    }
    Ok(f)
}

impl AffineFactorization {
    pub fn evaluate(&self, barycentric: &[usize]) -> Vec<i64> {
        let mut out = self.v.clone();
        for (a, b) in barycentric.iter().zip(&self.beta) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += *a as i64 * x;
            }
        }
        out
    }
}

/// A source `cΔ`: dilation factor, lex-ordered vertices and the barycentric
/// coordinates (scaled by `c`) of every lattice point.
#[derive(Debug, Clone)]
struct SimplexFrame {
    c: usize,
    vertices: Vec<Vec<i64>>,
    barycentric: Vec<Vec<usize>>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn simplex_frame(p: &LatticePolytope) -> Result<SimplexFrame> {
    let n = p.dim();
    let vertices = p.vertices().to_vec();
    let not_simplex = || Error::InvalidInput(format!("{p} is not a dilated unimodular simplex"));
    if vertices.len() != n + 1 {
        return Err(not_simplex());
    }
    let edges: Vec<Vec<i64>> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
    let c = edges.iter().flatten().fold(0i64, |g, x| g.gcd(x)).max(1) as usize;
    if p.num_lattice_points() != binomial(n + c, n) {
        return Err(not_simplex());
    }
    let barycentric = p
        .lattice_points()
        .iter()
        .map(|x| {
            let lambda = lattice::rational_coordinates(&edges, &sub(x, &vertices[0])).ok_or_else(not_simplex)?;
            let mut a = Vec::with_capacity(n + 1);
            for l in &lambda {
                let scaled = (l * &crate::Field::Rational.from_i64(c as i64))
                    .to_bigint()
                    .and_then(|b| usize::try_from(b).ok())
                    .ok_or_else(not_simplex)?;
                a.push(scaled);
            }
            let rest = c.checked_sub(a.iter().sum()).ok_or_else(not_simplex)?;
            a.insert(0, rest);
            Ok(a)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplexFrame {
        c,
        vertices,
        barycentric,
    })
}

/// `φ_x = t_x · ψ · ∏ η_i^{a_i(x)}` for a map out of `k[cΔ_n]`; `η_i`
/// belongs to the `i`-th vertex of the source in lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseDecomposition {
    pub c: usize,
    pub vertices: Vec<Vec<i64>>,
    pub barycentric: Vec<Vec<usize>>,
    pub psi: LaurentPoly,
    pub eta: Vec<LaurentPoly>,
    pub t: Vec<Scalar>,
}

impl VeroneseDecomposition {
    /// `t_x · ψ · ∏ η_i^{a_i(x)}` for the `j`-th source lattice point.
    pub fn image(&self, j: usize) -> Result<LaurentPoly> {
        let mut acc = self.psi.scale(&self.t[j]);
        for (eta, &a) in self.eta.iter().zip(&self.barycentric[j]) {
            acc = acc.mul(&eta.pow(a as u32))?;
        }
        Ok(acc)
    }

    pub fn recompose(&self, source: &LatticePolytope, target: &LatticePolytope) -> Result<GradedHom> {
        let images = (0..self.barycentric.len())
            .map(|j| self.image(j))
            .collect::<Result<Vec<_>>>()?;
        GradedHom::from_images(source.clone(), target.clone(), &images)
    }
}

/// Decomposes `f : k[cΔ_n] → k[Q]` with nonzero images.
///
/// Monomial content is split off as an integral affine map, `ψ` is the monic
/// gcd of the remaining parts and the `η_i` are `c`-th roots at the vertices.
/// Leftover scalars are absorbed into the `η_i` by `c`-th roots when the field
/// has them, and into `ψ` otherwise; the returned `t` is then identically 1.
/// Residual scalars that admit neither are reported as `ScalarRootMissing`
/// (a root was missing) or `DecompositionFailed`.
pub fn decompose_veronese(f: &GradedHom) -> Result<VeroneseDecomposition> {
    let frame = simplex_frame(f.source())?;
    let c = frame.c;
    let n = frame.vertices.len() - 1;
    let field = f.field();
    let d = f.target().ambient_dim();
    let images = f.images();
    let pts = f.source().lattice_points();
    let mut content = BTreeMap::new();
    let mut stripped = Vec::with_capacity(images.len());
    for (j, img) in images.iter().enumerate() {
        let (lo, rest) = monomial_content(img).ok_or_else(|| Error::ZeroGeneratorImage(format!("{:?}", pts[j])))?;
        content.insert(frame.barycentric[j].clone(), lo);
        stripped.push(rest);
    }
    let affine = factor_affine(c, n, &content)?;
    let psi0 = poly_gcd_all(&stripped, field, d)?;
    let index: BTreeMap<&Vec<usize>, usize> = frame.barycentric.iter().enumerate().map(|(j, a)| (a, j)).collect();
    let vertex_index: Vec<usize> = (0..=n).map(|i| index[&vertex_key(n, c, i)]).collect();
    let failed = |e: Error| Error::DecompositionFailed(e.to_string());
    let eta = (0..=n)
        .map(|i| {
            let rest = stripped[vertex_index[i]].exact_div(&psi0).map_err(failed)?;
            let root = rest.monic()?.nth_root(c as u32).map_err(failed)?;
            Ok(root.shift(&affine.beta[i]))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = psi0.shift(&affine.v);
    let mut dec = VeroneseDecomposition {
        c,
        vertices: frame.vertices.clone(),
        barycentric: frame.barycentric.clone(),
        psi,
        eta,
        t: vec![field.one(); images.len()],
    };
    let mut t = Vec::with_capacity(images.len());
    for (j, img) in images.iter().enumerate() {
        let base = dec.image(j)?;
        let s = img
            .exact_div(&base)
            .ok()
            .and_then(|q| q.as_constant())
            .ok_or_else(|| Error::DecompositionFailed(format!("image of {:?} is not a scalar multiple of ψ·∏η^a", pts[j])))?;
        t.push(s);
    }
    dec.t = t;
    absorb_scalars(&mut dec, &vertex_index, &index)?;
    for (j, img) in images.iter().enumerate() {
        if &dec.image(j)? != img {
            return Err(Error::DecompositionFailed(format!("recomposition differs at {:?}", pts[j])));
        }
    }
    Ok(dec)
}

/// Rescales `ψ` by `κ` and `η_i` by `τ_i` so that the residual scalars become
/// 1, with `τ_0` either a `c`-th root of `t` at the first vertex (and `κ = 1`)
/// or 1 (and `κ` that value). The other `τ_i` follow from the edge points
/// `(c−1)x_0 + x_i`.
fn absorb_scalars(
    dec: &mut VeroneseDecomposition,
    vertex_index: &[usize],
    index: &BTreeMap<&Vec<usize>, usize>,
) -> Result<()> {
    let c = dec.c;
    let n = dec.eta.len() - 1;
    let field = dec.psi.field();
    let t0 = dec.t[vertex_index[0]].clone();
    let edge = |i: usize| -> usize {
        let mut a = vertex_key(n, c, 0);
        a[0] -= 1;
        a[i] += 1;
        index[&a]
    };
    let attempt = |kappa: Scalar, tau0: Scalar| -> Result<Option<(Scalar, Vec<Scalar>)>> {
        let mut tau = vec![tau0.clone()];
        for i in 1..=n {
            tau.push((&tau0 * &dec.t[edge(i)]).div(&t0)?);
        }
        for (j, a) in dec.barycentric.iter().enumerate() {
            let mut s = kappa.clone();
            for (ti, &ai) in tau.iter().zip(a) {
                s = &s * &ti.pow(ai as i64)?;
            }
            if s != dec.t[j] {
                return Ok(None);
            }
        }
        Ok(Some((kappa, tau)))
    };
    let root = t0.nth_root(c as u32).ok().flatten();
    let mut found = None;
    if let Some(r) = &root {
        found = attempt(field.one(), r.clone())?;
    }
    if found.is_none() {
        found = attempt(t0.clone(), field.one())?;
    }
    let Some((kappa, tau)) = found else {
        return Err(match root {
            None => Error::ScalarRootMissing {
                order: c as u32,
                detail: format!("{t0} has no {c}-th root in {field}"),
            },
            Some(_) => Error::DecompositionFailed("residual scalars are not multiplicative".into()),
        });
    };
    dec.psi = dec.psi.scale(&kappa);
    for (eta, t) in dec.eta.iter_mut().zip(&tau) {
        *eta = eta.scale(t);
    }
    dec.t = vec![field.one(); dec.t.len()];
    Ok(())
}

fn recipe(op: &str, args: serde_json::Value, children: Vec<TameRecipe>) -> TameRecipe {
    TameRecipe::new(op, args, children)
}

/// Chain of free extensions over `conv{0, e_1, …, e_k}` sending the `k`-th
/// vertex to `images[k]`.
pub(crate) fn free_chain(n: usize, target: &LatticePolytope, images: &[LaurentPoly]) -> TameRecipe {
    let mut node = recipe(
        "free_extension",
        json!({"polytope": LatticePolytope::new(n, vec![vec![0; n]]).expect("point"), "apex": vec![0; n], "target": target, "image": images[0].to_json()}),
        vec![],
    );
    for k in 1..=n {
        let mut verts = vec![vec![0; n]];
        for i in 1..=k {
            let mut e = vec![0; n];
            e[i - 1] = 1;
            verts.push(e);
        }
        let apex = verts[k].clone();
        let poly = LatticePolytope::new(n, verts).expect("simplex face");
        node = recipe(
            "free_extension",
            json!({"polytope": poly, "apex": apex, "image": images[k].to_json()}),
            vec![node],
        );
    }
    node
}

/// A tame recipe evaluating to `f`: the `c`-th blow-up of `k[Δ_n] → k[t]`
/// followed by `t ↦ ψ`, starred with the `c`-th blow-up of the free map
/// `x_i ↦ η_i`, then moved to the source and target of `f`.
pub fn veronese_recipe(f: &GradedHom, dec: &VeroneseDecomposition) -> Result<TameRecipe> {
    if dec.t.iter().any(|s| !s.is_one()) {
        return Err(Error::DecompositionFailed("residual scalars remain".into()));
    }
    let s = f.source();
    let n = dec.vertices.len() - 1;
    if s.ambient_dim() != n {
        return Err(Error::NotNormalized(format!("{s} is not full-dimensional")));
    }
    let c = dec.c as i64;
    let d = f.target().ambient_dim();
    let field = f.field();
    let eta_points: Vec<Vec<i64>> = dec.eta.iter().flat_map(|e| e.support()).collect();
    let h = LatticePolytope::new(d, eta_points.clone())?;
    let mut big: Vec<Vec<i64>> = dec.psi.support();
    let scaled: Vec<Vec<i64>> = h.vertices().iter().map(|v| v.iter().map(|x| c * x).collect()).collect();
    for a in dec.psi.support() {
        for b in &scaled {
            big.push(add(&a, b));
        }
    }
    big.extend(scaled);
    let qbig = LatticePolytope::new(d, big)?;
    let point = LatticePolytope::new(0, vec![vec![]])?;
    let unit = LaurentPoly::one(field, 0);
    let psi_map = recipe(
        "compose",
        json!(null),
        vec![
            recipe(
                "free_extension",
                json!({"polytope": point, "apex": Vec::<i64>::new(), "target": qbig, "image": dec.psi.to_json()}),
                vec![],
            ),
            recipe("homothetic_blowup", json!({"c": c}), vec![free_chain(n, &point, &vec![unit; n + 1])]),
        ],
    );
    let theta = recipe(
        "polytope_change",
        json!({"target": qbig}),
        vec![recipe("homothetic_blowup", json!({"c": c}), vec![free_chain(n, &h, &dec.eta)])],
    );
    let v0 = &dec.vertices[0];
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|r| (1..=n).map(|k| (dec.vertices[k][r] - v0[r]) / c).collect())
        .collect();
    let transport = AffineLatticeMap::new(matrix, v0.clone())?;
    Ok(recipe(
        "polytope_change",
        json!({"target": f.target(), "source_map": transport}),
        vec![recipe("minkowski_star", json!(null), vec![psi_map, theta])],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ExactMatrix, Field};
    use crate::geometry::catalog;
    use crate::hom::is_homomorphism;
    use crate::tame::evaluate_recipe;

    fn q() -> Field {
        Field::Rational
    }

    fn map(rows: &[Vec<i64>]) -> GradedHom {
        let two = catalog::segment(2);
        GradedHom::new(two.clone(), two, ExactMatrix::from_i64_rows(q(), rows).unwrap()).unwrap()
    }

    fn strings(polys: &[LaurentPoly]) -> Vec<String> {
        polys.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn factor_affine_examples() {
        let alpha: BTreeMap<Vec<usize>, Vec<i64>> =
            [(vec![2, 0], vec![3, 1]), (vec![0, 2], vec![1, 5])].into_iter().collect();
        let f = factor_affine(2, 1, &alpha).unwrap();
        assert_eq!(f.v, vec![1, 1]);
        assert_eq!(f.beta, vec![vec![1, 0], vec![0, 2]]);
        let alpha: BTreeMap<Vec<usize>, Vec<i64>> =
            [(vec![2, 0], vec![1, 0]), (vec![0, 2], vec![0, 1])].into_iter().collect();
        assert!(matches!(factor_affine(2, 1, &alpha), Err(Error::NotIntegralAffine(_))));
    }

    #[test]
    fn identity_decomposes() {
        let id = GradedHom::identity(&catalog::segment(2), q());
        let d = decompose_veronese(&id).unwrap();
        assert_eq!(d.psi.to_string(), "1");
        assert_eq!(strings(&d.eta), vec!["1", "Y"]);
    }

    #[test]
    fn square_of_a_binomial() {
        let f = map(&[vec![1, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]);
        assert!(is_homomorphism(&f, 2));
        let d = decompose_veronese(&f).unwrap();
        assert_eq!(d.psi.to_string(), "1");
        assert_eq!(d.eta[1].to_string(), "Y");
        assert_eq!(d.eta[0], LaurentPoly::from_terms(q(), 1, [(vec![0], q().one()), (vec![1], q().one())]).unwrap());
    }

    #[test]
    fn scalars_go_into_eta() {
        let f = map(&[vec![4, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        let d = decompose_veronese(&f).unwrap();
        assert_eq!(d.psi.to_string(), "1");
        assert_eq!(strings(&d.eta), vec!["2", "Y"]);
        assert!(d.t.iter().all(Scalar::is_one));
    }

    #[test]
    fn scalars_without_roots_go_into_psi() {
        let f = map(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let d = decompose_veronese(&f).unwrap();
        assert_eq!(d.psi.to_string(), "2");
        assert_eq!(d.recompose(f.source(), f.target()).unwrap(), f);
    }

    #[test]
    fn twisted_scalars_need_a_missing_root() {
        let f = map(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(matches!(decompose_veronese(&f), Err(Error::ScalarRootMissing { order: 2, .. })));
    }

    #[test]
    fn zero_images_are_rejected() {
        let f = map(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        assert!(matches!(decompose_veronese(&f), Err(Error::ZeroGeneratorImage(_))));
    }

    #[test]
    fn recipe_reproduces_the_map() {
        for f in [
            map(&[vec![1, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]),
            map(&[vec![4, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]),
            map(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]),
        ] {
            let d = decompose_veronese(&f).unwrap();
            let r = veronese_recipe(&f, &d).unwrap();
            assert_eq!(evaluate_recipe(&r, q()).unwrap(), f);
        }
    }

    #[test]
    fn double_triangle_identity() {
        let p = catalog::simplex(2).dilate(2).unwrap();
        let id = GradedHom::identity(&p, q());
        let d = decompose_veronese(&id).unwrap();
        assert_eq!(d.recompose(&p, &p).unwrap(), id);
        let r = veronese_recipe(&id, &d).unwrap();
        assert_eq!(evaluate_recipe(&r, q()).unwrap(), id);
    }
}
