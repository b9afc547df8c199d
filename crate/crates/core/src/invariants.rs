//! Closed-form invariants: bounds on `s_k`, the generic value `s_max`, the
//! admissible values of `s_k`, and dimensions of the strata `M⁰(r,d,k,s)`.
//!
//! Every function validates its arguments (`g ≥ 2`, `r ≥ 2`, `1 ≤ k ≤ r−1`,
//! plus the input guard `r ≤ 64`, `g ≤ 10⁶`, `|d| ≤ 10⁹`).

use serde::{Deserialize, Serialize};

use crate::domain::{check_degree, check_rank, check_sub_rank, BundleClass, CurveClass};
use crate::error::{checked, Result, SegreError};
use crate::rational::Rational;

/// `k(r−k)(g−1)`, the lower edge of the generic band of `s_k`.
fn band_floor(g: i64, r: i64, k: i64) -> Result<i64> {
    let kk = checked::mul(k, r - k, "k(r-k)")?;
    checked::mul(kk, g - 1, "k(r-k)(g-1)")
}

fn check_grk(g: i64, r: i64, k: i64) -> Result<()> {
    CurveClass::new(g)?;
    check_rank(r)?;
    check_sub_rank(r, k)
}

/// `s_k(E, F) = k·d − r·deg F` for a rank-`k` subbundle `F` of degree `deg_f`.
pub fn segre_pair(r: i64, d: i64, k: i64, deg_f: i64) -> Result<i64> {
    check_rank(r)?;
    check_degree(d)?;
    check_degree(deg_f)?;
    check_sub_rank(r, k)?;
    let kd = checked::mul(k, d, "k*d")?;
    checked::sub(kd, checked::mul(r, deg_f, "r*degF")?, "segre pair")
}

/// Hirschowitz upper bound `k(r−k)(g−1) + (r−1)` for `s_k`.
pub fn hirschowitz_bound(g: i64, r: i64, k: i64) -> Result<i64> {
    check_grk(g, r, k)?;
    checked::add(band_floor(g, r, k)?, r - 1, "hirschowitz bound")
}

/// The weaker bound `k(r−k)g`.
pub fn mukai_sakai_bound(g: i64, r: i64, k: i64) -> Result<i64> {
    check_grk(g, r, k)?;
    let kk = checked::mul(k, r - k, "k(r-k)")?;
    checked::mul(kk, g, "k(r-k)g")
}

/// The unique `ε ∈ [0, r−1]` with `k(r−k)(g−1) + ε ≡ k·d (mod r)`.
pub fn epsilon_k(g: i64, r: i64, d: i64, k: i64) -> Result<i64> {
    let e = BundleClass::new(g, r, d)?;
    e.check_sub_rank(k)?;
    let kd = checked::mul(k, d, "k*d")?;
    let diff = checked::sub(kd, band_floor(g, r, k)?, "epsilon")?;
    Ok(diff.rem_euclid(r))
}

/// Value of `s_k` for a general bundle of class `(g, r, d)`:
/// `k(r−k)(g−1) + ε_k`.
pub fn s_max(g: i64, r: i64, d: i64, k: i64) -> Result<i64> {
    let eps = epsilon_k(g, r, d, k)?;
    checked::add(band_floor(g, r, k)?, eps, "s_max")
}

/// All `s` with `0 < s ≤ s_max` and `s ≡ k·d (mod r)`, ascending.
pub fn valid_s(g: i64, r: i64, d: i64, k: i64) -> Result<Vec<i64>> {
    let top = s_max(g, r, d, k)?;
    // top ≡ kd, so walking down from it in steps of r stays in the class
    let lowest = (top - 1).rem_euclid(r) + 1;
    Ok((lowest..=top).step_by(r as usize).collect())
}

/// `(r, d, k) ↦ (r, −d, r−k)`: parameters of the dual bundle with the
/// complementary sub-rank.
pub fn dual_params(r: i64, d: i64, k: i64) -> (i64, i64, i64) {
    (r, -d, r - k)
}

fn check_s(g: i64, r: i64, d: i64, k: i64, s: i64) -> Result<()> {
    let top = s_max(g, r, d, k)?;
    let invalid = |reason: String| SegreError::InvalidS {
        g,
        r,
        d,
        k,
        s,
        reason,
    };
    if (s - k * d).rem_euclid(r) != 0 {
        return Err(invalid(format!("s must be congruent to k*d = {} mod {r}", k * d)));
    }
    if s <= 0 || s > top {
        return Err(invalid(format!("s must lie in 0 < s <= s_max = {top}")));
    }
    Ok(())
}

/// `r²(g−1) + 1`, the dimension of the moduli space of stable bundles.
pub fn generic_dim(g: i64, r: i64) -> Result<i64> {
    CurveClass::new(g)?;
    check_rank(r)?;
    let r2 = checked::mul(r, r, "r^2")?;
    checked::add(checked::mul(r2, g - 1, "r^2(g-1)")?, 1, "generic dim")
}

/// Dimension of the stratum `M⁰(r,d,k,s)`:
/// `(r² + k² − rk)(g−1) + s + 1` below the generic band, `r²(g−1) + 1` inside it.
pub fn stratum_dim(g: i64, r: i64, d: i64, k: i64, s: i64) -> Result<i64> {
    check_s(g, r, d, k, s)?;
    if s < band_floor(g, r, k)? {
        let coeff = r * r + k * k - r * k;
        let base = checked::mul(coeff, g - 1, "stratum dim")?;
        checked::add(base, s + 1, "stratum dim")
    } else {
        generic_dim(g, r)
    }
}

/// Dimension of the maximal-subbundle locus of a general bundle in
/// `M⁰(r,d,k,s)`: `max(s − k(r−k)(g−1), 0)`.
///
/// Requires `0 < s ≤ k(r−k)(g−1) + r − 1`.
pub fn maximal_locus_dim(g: i64, r: i64, k: i64, s: i64) -> Result<i64> {
    let cap = hirschowitz_bound(g, r, k)?;
    if s <= 0 || s > cap {
        return Err(SegreError::InvalidDomain(format!(
            "s = {s} outside 0 < s <= {cap}"
        )));
    }
    Ok((s - band_floor(g, r, k)?).max(0))
}

/// Lower bounds on the Segre invariants of a maximal subbundle `F` and of
/// the quotient `E/F`, valid when `E` is stable with `s_k(E) = s`.
///
/// A side whose `ν`-range is empty is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedBounds {
    pub nu: i64,
    /// Lower bound for `s_ν(F)`, defined for `1 ≤ ν ≤ k−1`.
    pub sub_bound: Option<Rational>,
    /// Lower bound for `s_ν(E/F)`, defined for `1 ≤ ν ≤ r−k−1`.
    pub quot_bound: Option<Rational>,
    pub sub_bound_int: Option<i64>,
    pub quot_bound_int: Option<i64>,
}

/// `s_ν(F) ≥ (k − ν s)/r` and `s_ν(E/F) ≥ ((r−k) − (r−k−ν)s)/r`.
///
/// Stability of `E` is a precondition and is not checked here (only the
/// numeric class is known).
pub fn nested_bounds(r: i64, k: i64, s: i64, nu: i64) -> Result<NestedBounds> {
    check_rank(r)?;
    check_sub_rank(r, k)?;
    let sub_defined = (1..=k - 1).contains(&nu);
    let quot_defined = (1..=r - k - 1).contains(&nu);
    if !sub_defined && !quot_defined {
        return Err(SegreError::InvalidDomain(format!(
            "nu = {nu} outside both 1..={} and 1..={}",
            k - 1,
            r - k - 1
        )));
    }
    let sub_bound = if sub_defined {
        let num = checked::sub(k, checked::mul(nu, s, "nu*s")?, "nested bound")?;
        Some(Rational::new(num, r)?)
    } else {
        None
    };
    let quot_bound = if quot_defined {
        let ns = checked::mul(r - k - nu, s, "(r-k-nu)*s")?;
        Some(Rational::new(checked::sub(r - k, ns, "nested bound")?, r)?)
    } else {
        None
    };
    Ok(NestedBounds {
        nu,
        sub_bound,
        quot_bound,
        sub_bound_int: sub_bound.map(|q| q.ceil()).transpose()?,
        quot_bound_int: quot_bound.map(|q| q.ceil()).transpose()?,
    })
}

/// One row of the stratification table of `M(r, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDescriptor {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub s: i64,
    pub eps: i64,
    /// Degree of the maximal subbundles, `(kd − s)/r`.
    pub d1: i64,
    pub dim: i64,
    pub codim: i64,
    pub locus_dim: i64,
    pub is_generic: bool,
}

impl StratumDescriptor {
    pub fn new(g: i64, r: i64, d: i64, k: i64, s: i64) -> Result<Self> {
        let dim = stratum_dim(g, r, d, k, s)?;
        let generic = generic_dim(g, r)?;
        let kd = checked::mul(k, d, "k*d")?;
        Ok(StratumDescriptor {
            g,
            r,
            d,
            k,
            s,
            eps: epsilon_k(g, r, d, k)?,
            d1: (kd - s) / r,
            dim,
            codim: generic - dim,
            locus_dim: maximal_locus_dim(g, r, k, s)?,
            is_generic: s >= band_floor(g, r, k)?,
        })
    }
}

/// Every stratum of `M(r, d)`, ordered by `k` then `s`.
pub fn strata_table(g: i64, r: i64, d: i64) -> Result<Vec<StratumDescriptor>> {
    BundleClass::new(g, r, d)?;
    let mut rows = Vec::new();
    for k in 1..r {
        for s in valid_s(g, r, d, k)? {
            rows.push(StratumDescriptor::new(g, r, d, k, s)?);
        }
    }
    Ok(rows)
}

impl BundleClass {
    pub fn epsilon(&self, k: i64) -> Result<i64> {
        epsilon_k(self.g, self.r, self.d, k)
    }

    pub fn s_max(&self, k: i64) -> Result<i64> {
        s_max(self.g, self.r, self.d, k)
    }

    pub fn valid_s(&self, k: i64) -> Result<Vec<i64>> {
        valid_s(self.g, self.r, self.d, k)
    }

    pub fn strata(&self) -> Result<Vec<StratumDescriptor>> {
        strata_table(self.g, self.r, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segre_pair_examples() {
        assert_eq!(segre_pair(2, 1, 1, 0).unwrap(), 1);
        assert_eq!(segre_pair(3, 1, 2, 0).unwrap(), 2);
        assert_eq!(segre_pair(4, 0, 2, 0).unwrap(), 0);
        assert!(segre_pair(3, 1, 3, 0).is_err());
        assert!(segre_pair(3, 1, 0, 0).is_err());
    }

    #[test]
    fn segre_pair_steps_by_rank() {
        for deg_f in -10..10 {
            let a = segre_pair(5, 3, 2, deg_f).unwrap();
            let b = segre_pair(5, 3, 2, deg_f + 1).unwrap();
            assert_eq!(a - b, 5);
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(hirschowitz_bound(2, 2, 1).unwrap(), 2);
        assert_eq!(hirschowitz_bound(2, 3, 1).unwrap(), 4);
        assert_eq!(hirschowitz_bound(3, 4, 2).unwrap(), 11);
        assert_eq!(mukai_sakai_bound(2, 2, 1).unwrap(), 2);
        assert_eq!(mukai_sakai_bound(3, 3, 1).unwrap(), 6);
        assert_eq!(mukai_sakai_bound(2, 4, 2).unwrap(), 8);
        assert!(hirschowitz_bound(1, 2, 1).is_err());
        assert!(mukai_sakai_bound(2, 2, 2).is_err());
    }

    #[test]
    fn epsilon_and_s_max_examples() {
        assert_eq!(epsilon_k(2, 3, 1, 2).unwrap(), 0);
        assert_eq!(epsilon_k(2, 3, 1, 1).unwrap(), 2);
        assert_eq!(epsilon_k(2, 2, 0, 1).unwrap(), 1);
        assert_eq!(s_max(2, 2, 0, 1).unwrap(), 2);
        assert_eq!(s_max(2, 3, 1, 2).unwrap(), 2);
        assert_eq!(s_max(2, 3, 1, 1).unwrap(), 4);
        assert_eq!(s_max(5, 2, 1, 1).unwrap(), 5);
    }

    #[test]
    fn valid_s_examples() {
        // frozen from the degF sweep in oracle::brute_valid_s
        assert_eq!(valid_s(2, 2, 1, 1).unwrap(), vec![1]);
        assert_eq!(valid_s(4, 2, 0, 1).unwrap(), vec![2, 4]);
        assert_eq!(valid_s(2, 3, 1, 2).unwrap(), vec![2]);
        assert_eq!(valid_s(2, 3, 1, 1).unwrap(), vec![1, 4]);
    }

    #[test]
    fn dual_params_is_an_involution() {
        assert_eq!(dual_params(3, 1, 2), (3, -1, 1));
        let (r, d, k) = dual_params(3, 1, 2);
        assert_eq!(dual_params(r, d, k), (3, 1, 2));
        assert_eq!(s_max(2, 3, 1, 2).unwrap(), 2);
        assert_eq!(s_max(2, 3, -1, 1).unwrap(), 2);
    }

    #[test]
    fn stratum_dim_examples() {
        assert_eq!(stratum_dim(5, 2, 1, 1, 1).unwrap(), 14);
        assert_eq!(stratum_dim(5, 2, 1, 1, 5).unwrap(), 17);
        assert_eq!(stratum_dim(3, 3, 1, 1, 1).unwrap(), 16);
        assert_eq!(generic_dim(3, 3).unwrap() - stratum_dim(3, 3, 1, 1, 1).unwrap(), 3);
    }

    #[test]
    fn stratum_dim_rejects_bad_s() {
        // wrong residue
        assert!(matches!(stratum_dim(5, 2, 1, 1, 2), Err(SegreError::InvalidS { .. })));
        // above s_max
        assert!(matches!(stratum_dim(5, 2, 1, 1, 7), Err(SegreError::InvalidS { .. })));
        // non-positive
        assert!(matches!(stratum_dim(5, 2, 1, 1, -1), Err(SegreError::InvalidS { .. })));
    }

    #[test]
    fn generic_dim_examples() {
        assert_eq!(generic_dim(2, 2).unwrap(), 5);
        assert_eq!(generic_dim(5, 2).unwrap(), 17);
        assert_eq!(generic_dim(2, 3).unwrap(), 10);
    }

    #[test]
    fn maximal_locus_examples() {
        assert_eq!(maximal_locus_dim(5, 2, 1, 5).unwrap(), 1);
        assert_eq!(maximal_locus_dim(5, 2, 1, 3).unwrap(), 0);
        assert_eq!(maximal_locus_dim(2, 3, 2, 2).unwrap(), 0);
        assert!(maximal_locus_dim(5, 2, 1, 6).is_err());
        assert!(maximal_locus_dim(5, 2, 1, 0).is_err());
    }

    #[test]
    fn nested_bounds_examples() {
        let b = nested_bounds(3, 2, 2, 1).unwrap();
        assert_eq!(b.sub_bound, Some(Rational::zero()));
        assert_eq!(b.quot_bound, None);

        let b = nested_bounds(5, 3, 1, 2).unwrap();
        assert_eq!(b.sub_bound, Some(Rational::new(1, 5).unwrap()));
        assert_eq!(b.sub_bound_int, Some(1));

        let b = nested_bounds(4, 2, 2, 1).unwrap();
        assert_eq!(b.quot_bound, Some(Rational::zero()));
        assert_eq!(b.quot_bound_int, Some(0));
    }

    #[test]
    fn nested_bounds_undefined_sides() {
        // k = 1 has no sub side, the quotient side still exists
        let b = nested_bounds(4, 1, 3, 2).unwrap();
        assert!(b.sub_bound.is_none() && b.sub_bound_int.is_none());
        assert_eq!(b.quot_bound, Some(Rational::new(3 - 3, 4).unwrap()));
        assert!(nested_bounds(2, 1, 1, 1).is_err());
        assert!(nested_bounds(4, 2, 2, 2).is_err());
    }

    #[test]
    fn strata_table_examples() {
        let rows = strata_table(2, 2, 1).unwrap();
        assert_eq!(rows.len(), 1);
        let row = rows[0];
        assert_eq!((row.k, row.s, row.dim, row.codim, row.locus_dim), (1, 1, 5, 0, 0));

        let rows = strata_table(4, 2, 0).unwrap();
        let summary: Vec<_> = rows.iter().map(|x| (x.s, x.dim, x.is_generic)).collect();
        assert_eq!(summary, vec![(2, 12, false), (4, 13, true)]);

        let rows = strata_table(2, 3, 1).unwrap();
        let summary: Vec<_> = rows
            .iter()
            .map(|x| (x.k, x.s, x.eps, x.d1, x.dim, x.codim, x.locus_dim))
            .collect();
        assert_eq!(
            summary,
            vec![
                (1, 1, 2, 0, 9, 1, 0),
                (1, 4, 2, -1, 10, 0, 2),
                (2, 2, 0, 0, 10, 0, 0)
            ]
        );
    }
}
