//! Exact arbitrary-precision rationals.
//!
//! Every eigenvalue, shape parameter and bracket endpoint in this crate is a
//! [`Rational`]. Degenerate eigenvalues must be grouped by exact equality, so
//! floating point never enters a comparison; `f64` appears only in
//! human-facing decimal renderings.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact fraction, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Nearest integer, ties rounded up.
    pub fn round_half_up(&self) -> BigInt {
        (self.clone() + Rational::new(1, 2)).floor()
    }

    /// `⌊√self⌋` for `self ≥ 0`.
    pub fn floor_sqrt(&self) -> BigInt {
        assert!(!self.is_negative(), "square root of a negative rational");
        // ⌊√x⌋ = ⌊√⌊x⌋⌋ for x ≥ 0.
        self.floor().sqrt()
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn to_f64(&self) -> f64 {
        // Go through the ratio so huge numerators and denominators do not
        // overflow independently.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()).saturating_sub(1000);
                let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    /// Decimal rendering to `digits` significant figures.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_significant(self.to_f64(), digits)
    }

    /// The rational with the smallest denominator in the closed interval
    /// `[lo, hi]` (ties broken by smallest absolute numerator), found by
    /// descending the Stern–Brocot tree.
    pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
        assert!(lo <= hi, "empty interval");
        if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
            return Rational::zero();
        }
        if hi.is_negative() {
            return -Rational::simplest_in(&-hi.clone(), &-lo.clone());
        }
        simplest_positive(&lo.0, &hi.0)
    }

    /// All rationals in `[lo, hi]` with denominator at most `max_den`, in
    /// order of increasing denominator, at most `limit` of them.
    pub fn enumerate_in(lo: &Rational, hi: &Rational, max_den: u64, limit: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        if lo > hi {
            return out;
        }
        for q in 1..=max_den {
            let qb = BigInt::from(q);
            let first = (lo.clone() * Rational::from_integer(qb.clone())).ceil();
            let last = (hi.clone() * Rational::from_integer(qb.clone())).floor();
            let mut p = first;
            while p <= last {
                if p.gcd(&qb).is_one() {
                    out.push(Rational::from_bigints(p.clone(), qb.clone()));
                    if out.len() >= limit {
                        return out;
                    }
                }
                p += 1;
            }
        }
        out
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

fn simplest_positive(lo: &BigRational, hi: &BigRational) -> Rational {
    // Continued-fraction walk: if an integer lies in [lo, hi] take the
    // smallest one; otherwise peel off the common integer part and recurse
    // on the reciprocal interval.
    let fl = lo.floor();
    if &fl == lo {
        return Rational(fl);
    }
    let cl = lo.ceil();
    if &cl <= hi {
        return Rational(cl);
    }
    let inv_lo = (hi - &fl).recip();
    let inv_hi = (lo - &fl).recip();
    let tail = simplest_positive(&inv_lo, &inv_hi);
    Rational(fl + tail.0.recip())
}

pub(crate) fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
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
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse { line: None, message: format!("invalid rational {s:?}") };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_bigints(num, den))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
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
