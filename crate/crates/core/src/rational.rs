use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SegreError};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
///
/// Serialized as `{"num": n, "den": m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(SegreError::InvalidDomain("zero denominator".into()));
        }
        Ok(Rational(Ratio::new(num as i128, den as i128)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n as i128))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Smallest integer `≥ self`.
    pub fn ceil(&self) -> Result<i64> {
        Integer::div_ceil(&self.numer(), &self.denom())
            .to_i64()
            .ok_or(SegreError::Overflow("rational ceiling"))
    }

    /// Largest integer `≤ self`.
    pub fn floor(&self) -> Result<i64> {
        Integer::div_floor(&self.numer(), &self.denom())
            .to_i64()
            .ok_or(SegreError::Overflow("rational floor"))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.0
            .checked_add(&other.0)
            .map(Rational)
            .ok_or(SegreError::Overflow("rational addition"))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.0
            .checked_sub(&other.0)
            .map(Rational)
            .ok_or(SegreError::Overflow("rational subtraction"))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.0
            .checked_mul(&other.0)
            .map(Rational)
            .ok_or(SegreError::Overflow("rational multiplication"))
    }

    pub fn cmp_integer(&self, n: i64) -> Ordering {
        self.0.cmp(&Ratio::from_integer(n as i128))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawRational {
    num: i128,
    den: i128,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawRational {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRational::deserialize(deserializer)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational(Ratio::new(raw.num, raw.den)))
    }
}
