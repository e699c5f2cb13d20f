//! Sparse multivariate Laurent polynomials with exact scalar coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// An exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    dim: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field, dim: usize) -> Self {
        LaurentPoly {
            field,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field, dim: usize) -> Self {
        Self::constant(field.one(), dim)
    }

    pub fn constant(c: Scalar, dim: usize) -> Self {
        let field = c.field();
        let mut p = Self::zero(field, dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn monomial(field: Field, exponents: Vec<i64>) -> Self {
        Self::term(exponents, field.one())
    }

    pub fn term(exponents: Vec<i64>, coeff: Scalar) -> Self {
        let field = coeff.field();
        let mut p = Self::zero(field, exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    pub fn from_terms<I>(field: Field, dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Scalar)>,
    {
        let mut p = Self::zero(field, dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.len(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "coefficient in {} for polynomial over {}",
                    c.field(),
                    field
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c·x^e` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exponents: Vec<i64>, c: Scalar) {
        debug_assert_eq!(exponents.len(), self.dim);
        if c.is_zero() {
            return;
        }
        let key = Exponent(exponents);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[i64]) -> Scalar {
        self.terms
            .get(&Exponent(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().map(|e| e.0.clone()).collect()
    }

    pub fn leading_term(&self) -> Option<(&[i64], &Scalar)> {
        self.terms.iter().next_back().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    /// Splits off the leading coefficient: returns `(lc, f / lc)`.
    pub fn monic_parts(&self) -> Result<(Scalar, LaurentPoly)> {
        let lc = self
            .leading_coeff()
            .cloned()
            .ok_or_else(|| Error::ZeroPolynomial("monic normalization".into()))?;
        let inv = lc.inv()?;
        Ok((lc, self.scale(&inv)))
    }

    pub fn monic(&self) -> Result<LaurentPoly> {
        Ok(self.monic_parts()?.1)
    }

    /// The scalar value when the polynomial is a constant (or zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.0.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coordinatewise minimum and maximum exponents over the support.
    pub fn exponent_bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for e in it {
            for (i, &x) in e.0.iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        Some((lo, hi))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let moved: Vec<i64> = e.0.iter().zip(shift).map(|(a, b)| a + b).collect();
                (Exponent(moved), c.clone())
            })
            .collect();
        LaurentPoly {
            field: self.field,
            dim: self.dim,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.dim);
        }
        LaurentPoly {
            field: self.field,
            dim: self.dim,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    fn check_compatible(&self, other: &LaurentPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&-self.field.one())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut acc = Self::one(self.field, self.dim);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// The exact quotient `q` with `q·g = self`.
    ///
    /// Division runs on leading terms; every quotient exponent must lie in the
    /// box `[min(f) − min(g), max(f) − max(g)]`, which bounds the loop even
    /// though the Laurent monomial order is not a well-order.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut quotient = Self::zero(self.field, self.dim);
        if self.is_zero() {
            return Ok(quotient);
        }
        let (flo, fhi) = self.exponent_bounds().unwrap();
        let (glo, ghi) = g.exponent_bounds().unwrap();
        let lo: Vec<i64> = flo.iter().zip(&glo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = fhi.iter().zip(&ghi).map(|(a, b)| a - b).collect();
        let (g_lead, g_lc) = g.leading_term().unwrap();
        let g_lead = g_lead.to_vec();
        let g_lc_inv = g_lc.inv()?;
        let mut rem = self.clone();
        while let Some((r_lead, r_lc)) = rem.leading_term() {
            let e: Vec<i64> = r_lead.iter().zip(&g_lead).map(|(a, b)| a - b).collect();
            let inside = e
                .iter()
                .enumerate()
                .all(|(i, &x)| lo[i] <= x && x <= hi[i]);
            if !inside {
                return Err(Error::NotDivisible(format!(
                    "remainder term {:?} has no quotient inside the Newton bounds",
                    r_lead
                )));
            }
            let c = r_lc * &g_lc_inv;
            let t = Self::term(e.clone(), c.clone());
            rem = rem.sub(&t.mul(g)?)?;
            quotient.add_term(e, c);
        }
        Ok(quotient)
    }

    /// The monic `η` with `η^order = self`; `self` must be monic.
    pub fn nth_root(&self, order: u32) -> Result<LaurentPoly> {
        if order == 0 {
            return Err(Error::InvalidInput("root of order 0".into()));
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("root of the zero polynomial".into()));
        }
        if !self.is_monic() {
            return Err(Error::NotMonic(self.to_string()));
        }
        let no_root = |detail: String| Error::NoExactRoot { order, detail };
        let c = order as i64;
        let (lead, _) = self.leading_term().unwrap();
        if lead.iter().any(|x| x % c != 0) {
            return Err(no_root(format!("leading exponent {lead:?} not divisible by {order}")));
        }
        let root_lead: Vec<i64> = lead.iter().map(|x| x / c).collect();
        let mut root = Self::monomial(self.field, root_lead.clone());
        if order == 1 {
            return Ok(self.clone());
        }
        let order_scalar = self.field.from_i64(c);
        if order_scalar.is_zero() {
            return Err(no_root(format!(
                "characteristic {} divides the order",
                self.field.characteristic()
            )));
        }
        let (lo, hi) = self.exponent_bounds().unwrap();
        // The leading term of self − η^c is c·lt(η)^{c−1}·(next term of η).
        let lead_power: Vec<i64> = root_lead.iter().map(|x| x * (c - 1)).collect();
        let mut last = Exponent(root_lead);
        loop {
            let rem = self.sub(&root.pow(order))?;
            let Some((r_lead, r_lc)) = rem.leading_term() else {
                return Ok(root);
            };
            let e: Vec<i64> = r_lead.iter().zip(&lead_power).map(|(a, b)| a - b).collect();
            let inside = e
                .iter()
                .enumerate()
                .all(|(i, &x)| lo[i] <= c * x && c * x <= hi[i]);
            let next = Exponent(e.clone());
            if !inside || next >= last {
                return Err(no_root(format!("stray term at exponent {:?}", r_lead)));
            }
            root.add_term(e, r_lc.div(&order_scalar)?);
            last = next;
        }
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| TermJson {
                exponents: e.0.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(field: Field, dim: usize, terms: &[TermJson]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), field.parse_scalar(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(field, dim, parsed)
    }

    /// Variable names used for display: `Y` in one variable, `X, Y` in two,
    /// `X1, …, X(d−1), Y` beyond.
    pub fn variable_names(dim: usize) -> Vec<String> {
        match dim {
            0 => vec![],
            1 => vec!["Y".into()],
            2 => vec!["X".into(), "Y".into()],
            d => (1..d)
                .map(|i| format!("X{i}"))
                .chain(std::iter::once("Y".to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = Self::variable_names(self.dim);
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, &k) in names.iter().zip(&e.0) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    k => factors.push(format!("{name}^{k}")),
                }
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let body = if factors.is_empty() {
                magnitude
            } else if magnitude == "1" {
                factors.join("*")
            } else {
                format!("{magnitude}*{}", factors.join("*"))
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn poly(dim: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            q(),
            dim,
            terms.iter().map(|(e, c)| (e.to_vec(), q().from_i64(*c))),
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let s_plus_t = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let s_minus_t = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = s_plus_t.mul(&s_minus_t).unwrap();
        assert_eq!(prod, poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(s_plus_t.mul(&LaurentPoly::one(q(), 2)).unwrap(), s_plus_t);
        let one_y = poly(1, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(one_y.pow(2), poly(1, &[(&[0], 1), (&[1], 2), (&[2], 1)]));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = LaurentPoly::one(q(), 1);
        let b = LaurentPoly::one(q(), 2);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exact_division() {
        let f = poly(2, &[(&[2, 0], 1), (&[1, 1], 1)]);
        let s = poly(2, &[(&[1, 0], 1)]);
        assert_eq!(f.exact_div(&s).unwrap(), poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]));

        // ((1+Y)^2 Y^2) / (Y(1+Y)) = Y(1+Y)
        let one_y = poly(1, &[(&[0], 1), (&[1], 1)]);
        let y = poly(1, &[(&[1], 1)]);
        let num = one_y.pow(2).mul(&y.pow(2)).unwrap();
        let den = y.mul(&one_y).unwrap();
        let quo = num.exact_div(&den).unwrap();
        assert_eq!(quo, y.mul(&one_y).unwrap());
        assert_eq!(quo.mul(&den).unwrap(), num);

        // s^2 + t^2 is not a multiple of s + t over Q
        let f = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let g = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(matches!(f.exact_div(&g), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        let f = poly(1, &[(&[-2], 1), (&[1], 3)]);
        let g = poly(1, &[(&[-1], 1), (&[0], -1)]);
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn roots() {
        let sq = poly(1, &[(&[0], 1), (&[1], 2), (&[2], 1)]);
        assert_eq!(sq.nth_root(2).unwrap(), poly(1, &[(&[0], 1), (&[1], 1)]));
        let y4 = poly(1, &[(&[4], 1)]);
        assert_eq!(y4.nth_root(2).unwrap(), poly(1, &[(&[2], 1)]));
        let one_y = poly(1, &[(&[0], 1), (&[1], 1)]);
        assert!(matches!(one_y.nth_root(2), Err(Error::NoExactRoot { .. })));
        let not_monic = poly(1, &[(&[0], 1), (&[1], 2)]);
        assert!(matches!(not_monic.nth_root(2), Err(Error::NotMonic(_))));
    }

    #[test]
    fn root_order_divisible_by_characteristic() {
        let f2 = Field::prime(2).unwrap();
        let p = LaurentPoly::from_terms(f2, 1, [(vec![0], f2.one()), (vec![2], f2.one())]).unwrap();
        assert!(matches!(p.nth_root(2), Err(Error::NoExactRoot { .. })));
    }

    #[test]
    fn display_and_json_are_canonical() {
        let p = poly(2, &[(&[0, 1], -2), (&[1, 0], 1), (&[0, 0], 3)]);
        assert_eq!(p.to_string(), "X - 2*Y + 3");
        let json = p.to_json();
        assert_eq!(json[0].exponents, vec![1, 0]);
        let back = LaurentPoly::from_json(q(), 2, &json).unwrap();
        assert_eq!(back, p);
        assert_eq!(poly(1, &[(&[-1], 1)]).to_string(), "Y^-1");
    }
}
