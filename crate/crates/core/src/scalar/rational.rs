use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Backend, ParseScalar, Ring, ToJson};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (maintained by `BigRational`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Nearest double; used when comparing exact and float runs.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    /// `num/den`, with the denominator omitted for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
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

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Exact value of a plain decimal literal such as `-1.25`.
fn parse_decimal(s: &str) -> Result<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a rational literal: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = parse_int(if digits.is_empty() { "0" } else { &digits })?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b`, integers and plain decimals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_int(n.trim())?;
            let denom = parse_int(d.trim())?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        parse_decimal(s).map(Rational)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Ring for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl ToJson for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl ParseScalar for Rational {
    /// Strings in `a/b` or decimal form, or JSON integers. JSON floats are
    /// rejected because their decimal rendering is not exact.
    fn parse_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => s.parse(),
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Rational::from_integer(i)),
                None => Err(Error::Parse(format!(
                    "rational mode expects \"num/den\" strings, got {n}"
                ))),
            },
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
}
