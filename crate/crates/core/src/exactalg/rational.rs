use std::str::FromStr;

use num_bigint::BigInt;

use crate::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"` and the like.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.split('/').nth(1).is_some_and(|d| d.trim_start_matches('-').chars().all(|c| c == '0')) {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Rational::from_str(s).map_err(|_| Error::invalid(format!("not a rational number: {s:?}")))
}

/// Serde adapter writing rationals as strings, for use with `#[serde(with = ...)]`.
pub mod as_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
