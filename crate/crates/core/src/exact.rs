//! Exact reals for the classifier: rationals, or values the caller flags as
//! irrational. Rationality is never inferred from a float.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real number known either exactly (as a rational) or only as an
/// irrational quantity with a floating-point approximation.
///
/// JSON form: a string such as `"3/4"`, `"-2"` or `"0.125"`, a JSON integer,
/// or `{"irrational": 0.618...}`. Bare JSON floats are rejected because their
/// rationality cannot be decided.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactReal {
    Rational(BigRational),
    Irrational(f64),
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a finite decimal like `"-0.0314"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::MalformedRational(format!("{text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::MalformedRational(format!("{text:?} has zero denominator")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, dec)) = s.split_once('.') {
        if dec.is_empty() || !dec.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(dec.len() as u32);
        let frac_part = BigInt::from_str(dec).map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal::Rational(BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactReal::Rational(rational(num, den))
    }

    pub fn irrational(approx: f64) -> Self {
        ExactReal::Irrational(approx)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(q) => rational_to_f64(q),
            ExactReal::Irrational(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Rational(q) => Some(q),
            ExactReal::Irrational(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactReal::Rational(q) if q.is_zero())
    }

    /// `|x| < 1`; exact for rationals, and an irrational is never `+-1`.
    pub fn abs_lt_one(&self) -> bool {
        match self {
            ExactReal::Rational(q) => q.abs() < BigRational::one(),
            ExactReal::Irrational(x) => x.abs() < 1.0,
        }
    }

    pub fn neg(&self) -> ExactReal {
        match self {
            ExactReal::Rational(q) => ExactReal::Rational(-q),
            ExactReal::Irrational(x) => ExactReal::Irrational(-x),
        }
    }

    /// Sum; the sum of two flagged irrationals cannot be decided unless they
    /// cancel exactly.
    pub fn add(&self, other: &ExactReal) -> Result<ExactReal> {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => Ok(ExactReal::Rational(a + b)),
            (ExactReal::Rational(a), ExactReal::Irrational(x))
            | (ExactReal::Irrational(x), ExactReal::Rational(a)) => {
                Ok(ExactReal::Irrational(rational_to_f64(a) + x))
            }
            // bit-identical flags denote the same number, so x + (-x) = 0
            (ExactReal::Irrational(x), ExactReal::Irrational(y)) if *x == -*y => Ok(ExactReal::zero()),
            (ExactReal::Irrational(x), ExactReal::Irrational(y)) => Err(Error::Undecidable(format!(
                "sum of two flagged irrationals ({x} + {y})"
            ))),
        }
    }

    pub fn sub(&self, other: &ExactReal) -> Result<ExactReal> {
        self.add(&other.neg())
    }

    /// Product; zero absorbs, a nonzero rational times an irrational is
    /// irrational, and two irrationals cannot be decided.
    pub fn mul(&self, other: &ExactReal) -> Result<ExactReal> {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => Ok(ExactReal::Rational(a * b)),
            (ExactReal::Rational(a), ExactReal::Irrational(x))
            | (ExactReal::Irrational(x), ExactReal::Rational(a)) => {
                if a.is_zero() {
                    Ok(ExactReal::zero())
                } else {
                    Ok(ExactReal::Irrational(rational_to_f64(a) * x))
                }
            }
            (ExactReal::Irrational(x), ExactReal::Irrational(y)) => Err(Error::Undecidable(format!(
                "product of two flagged irrationals ({x} * {y})"
            ))),
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> ExactReal {
        self.mul(&ExactReal::Rational(q.clone()))
            .expect("rational factor is always decidable")
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(q) => write!(f, "{}", format_rational(q)),
            ExactReal::Irrational(x) => write!(f, "irrational({x})"),
        }
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(ExactReal::Rational)
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExactReal::Rational(q) => serializer.serialize_str(&format_rational(q)),
            ExactReal::Irrational(x) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("irrational", x)?;
                map.end()
            }
        }
    }
}

struct ExactVisitor;

impl<'de> Visitor<'de> for ExactVisitor {
    type Value = ExactReal;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(r#"a rational string like "1/2", an integer, or {"irrational": <approx>}"#)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactReal, E> {
        parse_rational(v).map(ExactReal::Rational).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExactReal, E> {
        Ok(ExactReal::Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactReal, E> {
        Ok(ExactReal::Rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExactReal, E> {
        Err(E::custom(format!(
            "bare number {v} is ambiguous: write an exact rational string or flag it as {{\"irrational\": {v}}}"
        )))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<ExactReal, A::Error> {
        let mut value = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "irrational" => value = Some(map.next_value::<f64>()?),
                other => return Err(de::Error::unknown_field(other, &["irrational"])),
            }
        }
        let x = value.ok_or_else(|| de::Error::missing_field("irrational"))?;
        if !x.is_finite() {
            return Err(de::Error::custom("irrational approximation must be finite"));
        }
        Ok(ExactReal::Irrational(x))
    }
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ExactVisitor)
    }
}

/// Serde helper for plain `BigRational` fields using the same string form.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        match ExactReal::deserialize(d)? {
            ExactReal::Rational(q) => Ok(q),
            ExactReal::Irrational(_) => Err(de::Error::custom("expected an exact rational")),
        }
    }
}
