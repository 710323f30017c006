//! Exact rationals, validated square-root tables and q-combinatorics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics when `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Integer power. Negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Self {
        if e >= 0 {
            Rational(num_traits::pow::Pow::pow(&self.0, e.unsigned_abs()))
        } else {
            let inv = self.inv().expect("negative power of zero");
            Rational(num_traits::pow::Pow::pow(&inv.0, e.unsigned_abs()))
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// ord(q): `Some(1)` for 1, `Some(2)` for -1, `None` (infinite) otherwise.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_one() {
            Some(1)
        } else if *self == -Rational::one() {
            Some(2)
        } else {
            None
        }
    }

    /// Residue modulo a prime `p`; `None` if `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &pb) + &pb) % &pb;
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        };
        let n = reduce(self.numer());
        let d = reduce(self.denom());
        if d == 0 {
            return None;
        }
        Some(crate::linalg::mul_mod(n, crate::linalg::inv_mod(d, p), p))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n"`, `"-n"` and `"p/q"` with `q > 0`. Decimals, signs on the
    /// denominator, whitespace and a leading `+` are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            line: 0,
            reason: format!("{reason}: {s:?}"),
        };
        match s.split_once('/') {
            None => parse_int(s)
                .map(|n| Rational(BigRational::from_integer(n)))
                .ok_or_else(|| bad("not an integer or p/q rational")),
            Some((p, q)) => {
                let p = parse_int(p).ok_or_else(|| bad("bad numerator"))?;
                if q.starts_with('-') {
                    return Err(bad("denominator must be positive"));
                }
                let q = parse_int(q).ok_or_else(|| bad("bad denominator"))?;
                if q.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|e: Error| match e {
            Error::Parse { reason, .. } => serde::de::Error::custom(reason),
            other => serde::de::Error::custom(other),
        })
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational((self.0).$m(o.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                Rational((self.0).$m(&o.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational((&self.0).$m(o.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: &'b Rational) -> Rational {
                Rational((&self.0).$m(&o.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, o: &Rational) {
        self.0 *= &o.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

/// User-supplied square roots, each checked on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalTable {
    entries: BTreeMap<Rational, Rational>,
}

impl RadicalTable {
    pub fn new<I: IntoIterator<Item = (Rational, Rational)>>(pairs: I) -> Result<Self> {
        let mut t = RadicalTable::default();
        for (q, r) in pairs {
            t.insert(q, r)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, q: Rational, r: Rational) -> Result<()> {
        if &r * &r != q {
            return Err(Error::BadRadical { q: q.to_string(), r: r.to_string() });
        }
        self.entries.insert(q, r);
        Ok(())
    }

    pub fn get(&self, q: &Rational) -> Option<&Rational> {
        self.entries.get(q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn sqrt_of(q: &Rational, table: &RadicalTable) -> Result<Rational> {
    table.get(q).cloned().ok_or_else(|| Error::MissingRadical(q.to_string()))
}

/// (n)_q = 1 + q + ... + q^{n-1}.
pub fn q_int(n: u32, q: &Rational) -> Result<Rational> {
    if q.is_one() {
        return Err(Error::QEqualsOne);
    }
    let mut acc = Rational::zero();
    let mut p = Rational::one();
    for _ in 0..n {
        acc += &p;
        p *= q;
    }
    Ok(acc)
}

/// Gaussian binomial (n choose k)_q through q-factorials.
pub fn q_binom(n: u32, k: u32, q: &Rational) -> Result<Rational> {
    if q.is_one() {
        return Err(Error::QEqualsOne);
    }
    assert!(k <= n, "q_binom needs k <= n");
    let mut ints = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let v = q_int(m, q)?;
        if v.is_zero() {
            return Err(Error::DegenerateQ(m));
        }
        ints.push(v);
    }
    let fact = |m: u32| -> Rational { ints[..m as usize].iter().cloned().product() };
    Ok(fact(n) / (fact(k) * fact(n - k)))
}
