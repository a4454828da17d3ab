//! Exact dyadic rationals `m / 2^e`.
//!
//! Every scalar in the crate is a [`Dyadic`]. Values are kept in canonical
//! form (`e == 0` or `m` odd), so structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = Dyadic {
            mantissa: mantissa.into(),
            exponent,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from(1)
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic::one().mul_pow2(k)
    }

    /// `n / 2^e` shorthand used heavily in tests and fixtures.
    pub fn frac(n: i64, e: u32) -> Self {
        Dyadic::new(n, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        if self.exponent == 0 {
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exponent as u64) as u32;
        if shift > 0 {
            self.mantissa >>= shift;
            self.exponent -= shift;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    /// Multiply by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k <= self.exponent as u64 {
                Dyadic {
                    mantissa: self.mantissa.clone(),
                    exponent: self.exponent - k as u32,
                }
            } else {
                Dyadic {
                    mantissa: &self.mantissa << (k - self.exponent as u64),
                    exponent: 0,
                }
            }
        } else {
            let e = self.exponent as i64 - k;
            Dyadic::new(self.mantissa.clone(), u32::try_from(e).expect("exponent overflow"))
        }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn floor(&self) -> BigInt {
        self.mantissa.div_floor(&(BigInt::one() << self.exponent))
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Floor as a machine integer; positions on the line always fit.
    pub fn floor_i64(&self) -> i64 {
        self.floor().to_i64().expect("position exceeds i64")
    }

    pub fn ceil_i64(&self) -> i64 {
        self.ceil().to_i64().expect("position exceeds i64")
    }

    /// Decompose a nonzero value as `odd * 2^v`.
    pub fn odd_and_valuation(&self) -> Option<(BigInt, i64)> {
        if self.is_zero() {
            return None;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        let odd = &self.mantissa >> tz;
        Some((odd, tz as i64 - self.exponent as i64))
    }

    /// `Some(j)` iff `num / den == 2^j` with both positive.
    pub fn log2_ratio(num: &Dyadic, den: &Dyadic) -> Option<i64> {
        if !num.is_positive() || !den.is_positive() {
            return None;
        }
        let (a, va) = num.odd_and_valuation()?;
        let (b, vb) = den.odd_and_valuation()?;
        (a == b).then_some(va - vb)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.exponent)
    }

    /// Exact conversion back from a rational whose denominator is a power of 2.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let den = r.denom();
        if !den.is_positive() {
            return None;
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), tz as u32))
    }

    /// Largest multiple of `2^-e` that is `<= r`.
    pub fn floor_rational(r: &BigRational, e: u32) -> Self {
        let scaled = r * BigRational::from_integer(BigInt::one() << e);
        Dyadic::new(scaled.floor().to_integer(), e)
    }

    /// Smallest multiple of `2^-e` that is `>= r`.
    pub fn ceil_rational(r: &BigRational, e: u32) -> Self {
        let scaled = r * BigRational::from_integer(BigInt::one() << e);
        Dyadic::new(scaled.ceil().to_integer(), e)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.mantissa << (e - self.exponent),
            &other.mantissa << (e - other.exponent),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic {
            mantissa: BigInt::from(n),
            exponent: 0,
        }
    }
}

impl From<i32> for Dyadic {
    fn from(n: i32) -> Self {
        Dyadic::from(n as i64)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic {
            mantissa: n,
            exponent: 0,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &'a Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Dyadic> for &'a Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = ParseError;

    /// Accepts `n`, `n/d` with `d` a power of two, and finite decimals like `0.375`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseError::Dyadic(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            let r = BigRational::new(n, d);
            return Dyadic::from_rational(&r).ok_or_else(bad);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let digits = format!("{int}{frac}");
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            return Dyadic::from_rational(&BigRational::new(n, den)).ok_or_else(bad);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Dyadic::from(n))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct DyadicJson {
    m: JsonInt,
    e: u32,
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let m = match self.mantissa.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(self.mantissa.to_string()),
        };
        DyadicJson { m, e: self.exponent }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DyadicJson::deserialize(deserializer)?;
        let m = match raw.m {
            JsonInt::Small(v) => BigInt::from(v),
            JsonInt::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
        };
        Ok(Dyadic::new(m, raw.e))
    }
}

/// Exact rational points. Fixed points of dyadic PL maps need not be dyadic.
pub type Point = BigRational;

pub fn point(d: &Dyadic) -> Point {
    d.to_rational()
}

pub fn format_point(p: &Point) -> String {
    if p.is_integer() {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

pub fn parse_point(s: &str) -> Result<Point, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Dyadic(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = Dyadic::new(6, 3);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(Dyadic::new(0, 5).exponent(), 0);
        assert_eq!(Dyadic::new(8, 3), Dyadic::one());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d("1/4") + d("3/8"), d("5/8"));
        assert_eq!(d("1/4") - d("3/8"), d("-1/8"));
        assert_eq!(d("3/4") * d("1/2"), d("3/8"));
        assert_eq!(d("3/4").mul_pow2(3), d("6"));
        assert_eq!(d("3").mul_pow2(-2), d("3/4"));
        assert!(d("-1/2") < d("1/1024"));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d("-1/4").floor_i64(), -1);
        assert_eq!(d("5/4").floor_i64(), 1);
        assert_eq!(d("5/4").ceil_i64(), 2);
        assert_eq!(d("2").ceil_i64(), 2);
    }

    #[test]
    fn power_of_two_ratios() {
        assert_eq!(Dyadic::log2_ratio(&d("3/8"), &d("3/2")), Some(-2));
        assert_eq!(Dyadic::log2_ratio(&d("3/8"), &d("1/4")), None);
        assert_eq!(Dyadic::log2_ratio(&d("-1"), &d("1")), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(d("0.375"), d("3/8"));
        assert_eq!(d("-6/16"), d("-3/8"));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert_eq!(d("5/4").to_string(), "5/4");
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&d("5/4")).unwrap();
        assert_eq!(j, r#"{"m":5,"e":2}"#);
        let big = Dyadic::new(BigInt::from(1) << 100u32, 0) + d("1/2");
        let back: Dyadic = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn rational_rounding() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(Dyadic::floor_rational(&third, 3), d("1/4"));
        assert_eq!(Dyadic::ceil_rational(&third, 3), d("3/8"));
    }
}
