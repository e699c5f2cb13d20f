//! Exact scalars over ℚ or a prime field F_p.
//!
//! The field is a runtime choice (one per session), so a [`Scalar`] carries
//! its field with it. Mixing scalars of different fields is a programming
//! error and panics; the public entry points validate fields up front.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime modulus accepted; keeps products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `Q` or `Fp` (with the modulus supplied separately) or `F<p>`.
    pub fn parse(name: &str, modulus: Option<u64>) -> Result<Self> {
        match name {
            "Q" | "q" | "QQ" => Ok(Field::Rational),
            "Fp" | "fp" | "F_p" => match modulus {
                Some(p) => Field::prime(p),
                None => Err(Error::InvalidField("Fp requires a prime modulus".into())),
            },
            other => {
                let digits = other
                    .strip_prefix("F_")
                    .or_else(|| other.strip_prefix('F'))
                    .ok_or_else(|| Error::InvalidField(other.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidField(other.to_string()))?;
                Field::prime(p)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Prime {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        n.div(&d)
    }

    /// Parses a decimal integer or a `p/q` fraction.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::ParseScalar(text.to_string());
        match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                self.from_bigint(&n).div(&self.from_bigint(&d))
            }
            None => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    /// Every element of a prime field, in increasing representative order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some(
                (0..p)
                    .map(|value| Scalar::Prime { value, modulus: p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Some `r` in the same field with `r^order = self`, if one exists.
    /// Over ℚ the root is the positive one when there is a choice.
    pub fn nth_root(&self, order: u32) -> Result<Option<Scalar>> {
        if order == 0 {
            return Err(Error::InvalidInput("root of order 0".into()));
        }
        if self.is_zero() || order == 1 {
            return Ok(Some(self.clone()));
        }
        match self {
            Scalar::Rational(q) => {
                let negative = q.is_negative();
                if negative && order.is_multiple_of(2) {
                    return Ok(None);
                }
                let num = q.numer().abs();
                let den = q.denom().clone();
                let rn = num.nth_root(order);
                let rd = den.nth_root(order);
                if Pow::pow(&rn, order) != num || Pow::pow(&rd, order) != den {
                    return Ok(None);
                }
                let r = BigRational::new(rn, rd);
                Ok(Some(Scalar::Rational(if negative { -r } else { r })))
            }
            Scalar::Prime { value, modulus } => {
                let p = *modulus;
                let g = (order as u64).gcd(&(p - 1));
                if g == 1 {
                    let inv = mod_inverse(order as u64 % (p - 1), p - 1);
                    return Ok(Some(Scalar::Prime {
                        value: pow_mod(*value, inv, p),
                        modulus: p,
                    }));
                }
                if p > (1 << 22) {
                    return Err(Error::SearchLimit(format!(
                        "root of order {order} in F{p}"
                    )));
                }
                Ok((1..p)
                    .find(|&x| pow_mod(x, order as u64, p) == *value)
                    .map(|x| Scalar::Prime { value: x, modulus: p }))
            }
        }
    }

    /// The value as an integer, when it is one (ℚ only).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(BigInt::from(*value)),
        }
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Prime { modulus: a, .. }, Scalar::Prime { modulus: b, .. }) = (self, other)
        {
            assert_eq!(a, b, "scalars from different prime fields");
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $prime:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_same(rhs);
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (
                        Scalar::Prime { value: a, modulus: p },
                        Scalar::Prime { value: b, .. },
                    ) => Scalar::Prime {
                        value: $prime(*a, *b, *p),
                        modulus: *p,
                    },
                    _ => panic!("scalars from different fields"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        let b = &a * &q.from_i64(2);
        assert_eq!(b.to_string(), "3");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let three = f.from_i64(3);
        assert_eq!((&three * &three).to_string(), "4");
        assert_eq!(three.inv().unwrap().to_string(), "2");
        assert_eq!(f.from_i64(-1).to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap().to_string(), "3");
    }

    #[test]
    fn division_by_zero_is_rejected() {
        for field in [Field::Rational, Field::prime(7).unwrap()] {
            assert_eq!(field.one().div(&field.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn non_primes_are_rejected() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert_eq!(Field::parse("F5", None).unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("Fp", Some(7)).unwrap(), Field::Prime(7));
        assert!(Field::parse("Fp", None).is_err());
    }

    #[test]
    fn roots() {
        let q = Field::Rational;
        let r = q.parse_scalar("9/4").unwrap().nth_root(2).unwrap().unwrap();
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(q.from_i64(2).nth_root(2).unwrap(), None);
        assert_eq!(q.from_i64(-8).nth_root(3).unwrap().unwrap().to_string(), "-2");
        let f = Field::prime(7).unwrap();
        let r = f.from_i64(2).nth_root(2).unwrap().unwrap();
        assert_eq!((&r * &r).to_string(), "2");
        assert_eq!(f.from_i64(3).nth_root(2).unwrap(), None);
    }
}
