//! Numeric classes standing in for curves, bundles and subbundles.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SegreError};
use crate::rational::Rational;

pub const MAX_RANK: i64 = 64;
pub const MAX_GENUS: i64 = 1_000_000;
pub const MAX_ABS_DEGREE: i64 = 1_000_000_000;

/// A smooth projective curve, known only through its genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    g: i64,
}

impl CurveClass {
    pub fn new(g: i64) -> Result<Self> {
        if g < 2 {
            return Err(SegreError::InvalidDomain(format!("genus must be >= 2, got {g}")));
        }
        if g > MAX_GENUS {
            return Err(SegreError::OutOfGuard(format!("genus {g} exceeds {MAX_GENUS}")));
        }
        Ok(CurveClass { g })
    }

    pub fn genus(&self) -> i64 {
        self.g
    }
}

pub(crate) fn check_rank(r: i64) -> Result<()> {
    if r < 2 {
        return Err(SegreError::InvalidDomain(format!("rank must be >= 2, got {r}")));
    }
    if r > MAX_RANK {
        return Err(SegreError::OutOfGuard(format!("rank {r} exceeds {MAX_RANK}")));
    }
    Ok(())
}

pub(crate) fn check_degree(d: i64) -> Result<()> {
    if d.checked_abs().is_none_or(|a| a > MAX_ABS_DEGREE) {
        return Err(SegreError::OutOfGuard(format!("|degree| {d} exceeds {MAX_ABS_DEGREE}")));
    }
    Ok(())
}

pub(crate) fn check_sub_rank(r: i64, k: i64) -> Result<()> {
    if k < 1 || k > r - 1 {
        return Err(SegreError::InvalidDomain(format!(
            "sub-rank k must satisfy 1 <= k <= r-1 = {}, got {k}",
            r - 1
        )));
    }
    Ok(())
}

/// Numeric class `(g, r, d)` of a vector bundle of rank `r ≥ 2` and degree
/// `d` on a curve of genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleClass {
    pub g: i64,
    pub r: i64,
    pub d: i64,
}

impl BundleClass {
    pub fn new(g: i64, r: i64, d: i64) -> Result<Self> {
        CurveClass::new(g)?;
        check_rank(r)?;
        check_degree(d)?;
        Ok(BundleClass { g, r, d })
    }

    pub fn curve(&self) -> CurveClass {
        CurveClass { g: self.g }
    }

    /// `μ = d / r`.
    pub fn slope(&self) -> Rational {
        Rational::new(self.d, self.r).expect("rank is positive")
    }

    pub fn check_sub_rank(&self, k: i64) -> Result<()> {
        check_sub_rank(self.r, k)
    }

    /// The class `(g, r, -d)` of the dual bundle.
    pub fn dual(&self) -> Self {
        BundleClass { d: -self.d, ..*self }
    }

    /// Twist by a line bundle of degree `t`: `(g, r, d + r t)`.
    pub fn twist(&self, t: i64) -> Result<Self> {
        let d = self
            .r
            .checked_mul(t)
            .and_then(|rt| self.d.checked_add(rt))
            .ok_or(SegreError::Overflow("twist"))?;
        BundleClass::new(self.g, self.r, d)
    }
}

/// A rank-`k` subbundle of degree `deg_f` inside a bundle of class `bundle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubbundlePair {
    pub bundle: BundleClass,
    pub k: i64,
    pub deg_f: i64,
}

impl SubbundlePair {
    pub fn new(bundle: BundleClass, k: i64, deg_f: i64) -> Result<Self> {
        bundle.check_sub_rank(k)?;
        check_degree(deg_f)?;
        Ok(SubbundlePair { bundle, k, deg_f })
    }

    /// `s_k(E, F) = k·deg E − r·deg F`.
    pub fn segre_value(&self) -> Result<i64> {
        let BundleClass { r, d, .. } = self.bundle;
        let kd = self.k.checked_mul(d).ok_or(SegreError::Overflow("k*d"))?;
        let rf = r.checked_mul(self.deg_f).ok_or(SegreError::Overflow("r*degF"))?;
        kd.checked_sub(rf).ok_or(SegreError::Overflow("segre pair"))
    }

    /// `k(r−k)(μ(E/F) − μ(F))`, the same number computed through slopes.
    pub fn slope_gap(&self) -> Result<Rational> {
        let BundleClass { r, d, .. } = self.bundle;
        let k = self.k;
        let mu_f = Rational::new(self.deg_f, k)?;
        let mu_q = Rational::new(d - self.deg_f, r - k)?;
        Rational::from(k * (r - k)).checked_mul(&mu_q.checked_sub(&mu_f)?)
    }
}
