//! Multivariate gcd by recursive primitive polynomial remainder sequences.
//!
//! Polynomials are [`LaurentPoly`] values whose exponents are all
//! nonnegative; `laurent_gcd` strips monomial content first, so its result
//! is a gcd up to units of the Laurent ring (scalars times monomials).

use std::collections::BTreeMap;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Monic gcd of two polynomials with nonnegative exponents.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    for p in [a, b] {
        if let Some((lo, _)) = p.exponent_bounds() {
            if lo.iter().any(|&x| x < 0) {
                return Err(Error::InvalidInput(format!(
                    "polynomial gcd needs nonnegative exponents: {p}"
                )));
            }
        }
    }
    gcd_in(a, b, a.dim())
}

/// Gcd of many polynomials with nonnegative exponents (monic; 0 for none).
pub fn poly_gcd_all<'a, I>(polys: I, field: crate::Field, dim: usize) -> Result<LaurentPoly>
where
    I: IntoIterator<Item = &'a LaurentPoly>,
{
    let mut acc = LaurentPoly::zero(field, dim);
    for p in polys {
        acc = poly_gcd(&acc, p)?;
        if acc.as_constant().is_some_and(|c| !c.is_zero()) {
            break;
        }
    }
    Ok(acc)
}

/// Splits `f` into its monomial content (coordinatewise minimal exponent) and
/// the remaining polynomial, which has no monomial factor.
pub fn monomial_content(f: &LaurentPoly) -> Option<(Vec<i64>, LaurentPoly)> {
    let (lo, _) = f.exponent_bounds()?;
    let neg: Vec<i64> = lo.iter().map(|x| -x).collect();
    Some((lo, f.shift(&neg)))
}

/// Gcd in the Laurent ring, normalized to a monic polynomial without
/// monomial content.
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let strip = |p: &LaurentPoly| monomial_content(p).map_or_else(|| p.clone(), |(_, q)| q);
    poly_gcd(&strip(a), &strip(b))
}

/// Gcd of polynomials involving only variables `0..nvars`.
fn gcd_in(a: &LaurentPoly, b: &LaurentPoly, nvars: usize) -> Result<LaurentPoly> {
    if a.is_zero() {
        return if b.is_zero() { Ok(b.clone()) } else { b.monic() };
    }
    if b.is_zero() {
        return a.monic();
    }
    if nvars == 0 || a.as_constant().is_some() || b.as_constant().is_some() {
        return Ok(LaurentPoly::one(a.field(), a.dim()));
    }
    let v = nvars - 1;
    let (ca, pa) = content_split(a, v)?;
    let (cb, pb) = content_split(b, v)?;
    let content = gcd_in(&ca, &cb, v)?;
    let (mut r0, mut r1) = if degree_in(&pa, v) >= degree_in(&pb, v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        if degree_in(&r1, v) == 0 {
            break LaurentPoly::one(a.field(), a.dim());
        }
        let r = pseudo_remainder(&r0, &r1, v)?;
        if r.is_zero() {
            break r1;
        }
        if degree_in(&r, v) == 0 {
            break LaurentPoly::one(a.field(), a.dim());
        }
        r0 = r1;
        r1 = content_split(&r, v)?.1;
    };
    let g = content_split(&g, v)?.1;
    content.mul(&g)?.monic()
}

fn degree_in(p: &LaurentPoly, v: usize) -> i64 {
    p.terms().map(|(e, _)| e[v]).max().unwrap_or(0)
}

/// Coefficients of `p` as a polynomial in variable `v`.
fn coefficients_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut rest = e.to_vec();
        rest[v] = 0;
        out.entry(e[v])
            .or_insert_with(|| LaurentPoly::zero(p.field(), p.dim()))
            .add_term(rest, c.clone());
    }
    out
}

/// `(content, primitive part)` of `p` viewed in variable `v` over the
/// polynomial ring in the variables below `v`.
fn content_split(p: &LaurentPoly, v: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    let coeffs = coefficients_in(p, v);
    let mut content = LaurentPoly::zero(p.field(), p.dim());
    for c in coeffs.values() {
        content = gcd_in(&content, c, v)?;
        if content.as_constant().is_some() {
            break;
        }
    }
    let primitive = p.exact_div(&content)?;
    Ok((content, primitive))
}

fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> Result<LaurentPoly> {
    let db = degree_in(b, v);
    let lc_b = coefficients_in(b, v).remove(&db).expect("leading coefficient");
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, v) >= db {
        let dr = degree_in(&r, v);
        let lc_r = coefficients_in(&r, v).remove(&dr).expect("leading coefficient");
        let mut shift = vec![0; a.dim()];
        shift[v] = dr - db;
        r = lc_b.mul(&r)?.sub(&lc_r.shift(&shift).mul(b)?)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Field;

    fn poly(dim: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        let q = Field::Rational;
        LaurentPoly::from_terms(q, dim, terms.iter().map(|(e, c)| (e.to_vec(), q.from_i64(*c))))
            .unwrap()
    }

    #[test]
    fn univariate_gcd() {
        // (1+Y)^2 (2+Y) and (1+Y)(3+Y)
        let a = poly(1, &[(&[0], 1), (&[1], 1)]).pow(2).mul(&poly(1, &[(&[0], 2), (&[1], 1)])).unwrap();
        let b = poly(1, &[(&[0], 1), (&[1], 1)]).mul(&poly(1, &[(&[0], 3), (&[1], 1)])).unwrap();
        assert_eq!(poly_gcd(&a, &b).unwrap(), poly(1, &[(&[0], 1), (&[1], 1)]));
    }

    #[test]
    fn bivariate_gcd() {
        // common factor X + Y^2, cofactors X - Y and 2X + 1
        let common = poly(2, &[(&[1, 0], 1), (&[0, 2], 1)]);
        let a = common.mul(&poly(2, &[(&[1, 0], 1), (&[0, 1], -1)])).unwrap();
        let b = common.mul(&poly(2, &[(&[1, 0], 2), (&[0, 0], 1)])).unwrap();
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g, common.monic().unwrap());
    }

    #[test]
    fn coprime_and_zero_cases() {
        let a = poly(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = poly(2, &[(&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), LaurentPoly::one(Field::Rational, 2));
        let z = LaurentPoly::zero(Field::Rational, 2);
        assert_eq!(poly_gcd(&z, &a.scale(&Field::Rational.from_i64(3))).unwrap(), a);
    }

    #[test]
    fn laurent_gcd_ignores_monomials() {
        let a = poly(1, &[(&[-1], 1), (&[0], 1)]); // Y^-1 (1 + Y)
        let b = poly(1, &[(&[3], 1), (&[4], 1)]); // Y^3 (1 + Y)
        assert_eq!(laurent_gcd(&a, &b).unwrap(), poly(1, &[(&[0], 1), (&[1], 1)]));
    }

    #[test]
    fn gcd_over_prime_field() {
        let f = Field::prime(5).unwrap();
        let p = |terms: &[(&[i64], i64)]| {
            LaurentPoly::from_terms(f, 2, terms.iter().map(|(e, c)| (e.to_vec(), f.from_i64(*c)))).unwrap()
        };
        let common = p(&[(&[1, 1], 1), (&[0, 0], 2)]);
        let a = common.mul(&p(&[(&[1, 0], 1)])).unwrap().mul(&p(&[(&[0, 1], 1), (&[0, 0], 1)])).unwrap();
        let b = common.mul(&common).unwrap();
        assert_eq!(poly_gcd(&a, &b).unwrap(), common.monic().unwrap());
    }
}
