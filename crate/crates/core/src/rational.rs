//! Exact rational scalars and their textual form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational; every value in the library is one of these.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct RationalParseError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` for a signed exponent.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Formats as `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (q nonzero); surrounding whitespace is ignored.
pub fn parse_q(text: &str) -> Result<Q, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let numer: BigInt = num.parse().map_err(|_| err())?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Q::new(numer, denom))
}

/// Serde adapter writing rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(QStr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}
