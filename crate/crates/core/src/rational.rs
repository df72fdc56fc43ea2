//! Rational helpers and the canonical `"p/q"` string form used on every wire format.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn half() -> Q {
    q(1, 2)
}

/// Hilbert polynomial of the structure sheaf of the plane, `P(x) = (x^2 + 3x + 2)/2`.
pub fn hilbert_p2(x: &Q) -> Q {
    (x * x + int(3) * x + int(2)) / int(2)
}

/// Canonical string: reduced, positive denominator, integers without `/1`.
pub fn to_canonical(x: &Q) -> String {
    x.to_string()
}

/// Parses `"p/q"` or `"p"` with optional sign. Rejects zero denominators,
/// decimals and whitespace inside the literal.
pub fn parse(s: &str) -> Result<Q> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let valid = |p: &str, signed: bool| {
        let digits = if signed {
            p.strip_prefix('-').or_else(|| p.strip_prefix('+')).unwrap_or(p)
        } else {
            p
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Floor of a rational as a big integer.
pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Serde adapter: one rational as a canonical string.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let lit = RationalLiteral::deserialize(d)?;
        lit.into_q().map_err(de::Error::custom)
    }

    /// Strings or JSON integers; floats are refused so nothing inexact gets in.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalLiteral {
        Str(String),
        Int(i64),
        Other(serde::de::IgnoredAny),
    }

    impl RationalLiteral {
        pub(crate) fn into_q(self) -> Result<Q> {
            match self {
                RationalLiteral::Str(s) => parse(&s),
                RationalLiteral::Int(n) => Ok(int(n)),
                RationalLiteral::Other(_) => Err(Error::BadRational(
                    "non-integer number (write rationals as \"p/q\" strings)".to_string(),
                )),
            }
        }
    }
}

/// Serde adapter: a vector of rationals as canonical strings.
pub mod serde_qvec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&to_canonical(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let lits = Vec::<serde_q::RationalLiteral>::deserialize(d)?;
        lits.into_iter()
            .map(|l| l.into_q().map_err(de::Error::custom))
            .collect()
    }
}

/// Serializes any `Display` value (big integers, quadratic numbers) as a string.
pub fn serde_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Serde adapter for `Option<Q>`.
pub mod serde_opt_q {
    use super::*;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        x.as_ref().map(to_canonical).serialize(s)
    }
}
