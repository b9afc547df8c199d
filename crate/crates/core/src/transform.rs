//! Elementary transformations acting on Segre profiles.
//!
//! An elementary transformation `E' ⊂ E` lowers the degree by one and, for
//! each sub-rank `k`, is either of `k`-type I (`s_k` drops by `k`) or of
//! `k`-type II (`s_k` rises by `r − k`). This module only sees those per-rank
//! types.
//!
//! A [`SegreProfile`] is formal state. The machine enforces necessary
//! conditions (the congruences `s_i ≡ i·d mod r` and, through
//! [`type_feasible`], the generic caps) but it does not claim that a given
//! joint assignment of types is realized by an actual point and linear form.
//! Callers that need the worst case over all joint assignments enumerate them
//! (see [`TransformStep::all`] and `oracle::min_adversarial`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::BundleClass;
use crate::error::{checked, Result, SegreError};
use crate::invariants::{hirschowitz_bound, s_max};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepType {
    I,
    II,
}

impl StepType {
    pub fn flip(self) -> Self {
        match self {
            StepType::I => StepType::II,
            StepType::II => StepType::I,
        }
    }
}

impl fmt::Display for StepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepType::I => "I",
            StepType::II => "II",
        })
    }
}

impl FromStr for StepType {
    type Err = SegreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(StepType::I),
            "II" | "ii" | "2" => Ok(StepType::II),
            other => Err(SegreError::InvalidDomain(format!("unknown step type {other:?}"))),
        }
    }
}

/// The Segre invariants `(s_1, …, s_{r−1})` of a bundle of class `(g, r, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct SegreProfile {
    g: i64,
    r: i64,
    d: i64,
    s: Vec<i64>,
}

#[derive(Deserialize)]
struct RawProfile {
    g: i64,
    r: i64,
    d: i64,
    s: Vec<i64>,
}

impl TryFrom<RawProfile> for SegreProfile {
    type Error = SegreError;

    fn try_from(raw: RawProfile) -> Result<Self> {
        SegreProfile::new(raw.g, raw.r, raw.d, raw.s)
    }
}

impl SegreProfile {
    /// Checks length `r − 1` and `s_i ≡ i·d (mod r)` for every `i`.
    pub fn new(g: i64, r: i64, d: i64, s: Vec<i64>) -> Result<Self> {
        BundleClass::new(g, r, d)?;
        if s.len() as i64 != r - 1 {
            return Err(SegreError::InvalidDomain(format!(
                "profile needs r-1 = {} entries, got {}",
                r - 1,
                s.len()
            )));
        }
        for (idx, &value) in s.iter().enumerate() {
            let i = idx as i64 + 1;
            if (value as i128 - (i * d) as i128).rem_euclid(r as i128) != 0 {
                return Err(SegreError::InvalidDomain(format!(
                    "s_{i} = {value} is not congruent to {i}*{d} mod {r}"
                )));
            }
        }
        Ok(SegreProfile { g, r, d, s })
    }

    /// Profile of a general bundle: `s_i = s_max(g, r, d, i)` for every `i`.
    pub fn general(g: i64, r: i64, d: i64) -> Result<Self> {
        BundleClass::new(g, r, d)?;
        let s = (1..r).map(|i| s_max(g, r, d, i)).collect::<Result<_>>()?;
        SegreProfile::new(g, r, d, s)
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn values(&self) -> &[i64] {
        &self.s
    }

    /// `s_i` for `1 ≤ i ≤ r − 1`.
    pub fn get(&self, i: i64) -> Option<i64> {
        if i < 1 {
            return None;
        }
        self.s.get(i as usize - 1).copied()
    }

    /// Every entry is at most its Hirschowitz bound.
    pub fn within_caps(&self) -> Result<bool> {
        for (idx, &value) in self.s.iter().enumerate() {
            if value > hirschowitz_bound(self.g, self.r, idx as i64 + 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every entry is positive, the numeric shadow of stability.
    pub fn is_stable(&self) -> bool {
        self.s.iter().all(|&v| v > 0)
    }

    fn check_rank_index(&self, i: i64) -> Result<()> {
        if i < 1 || i >= self.r {
            return Err(SegreError::InvalidDomain(format!(
                "sub-rank {i} outside 1..={}",
                self.r - 1
            )));
        }
        Ok(())
    }
}

/// One elementary transformation, seen through its type at every sub-rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransformStep {
    #[serde(deserialize_with = "step_types")]
    types: Vec<StepType>,
}

/// Accepts `["I","II"]` or `"I,II"`.
fn step_types<'de, D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Vec<StepType>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        List(Vec<StepType>),
        Text(String),
    }
    let types = match Raw::deserialize(de)? {
        Raw::List(types) => types,
        Raw::Text(text) => text
            .parse::<TransformStep>()
            .map_err(serde::de::Error::custom)?
            .types,
    };
    if types.is_empty() {
        return Err(serde::de::Error::custom("a step needs at least one type"));
    }
    Ok(types)
}

impl TransformStep {
    pub fn new(types: Vec<StepType>) -> Result<Self> {
        if types.is_empty() {
            return Err(SegreError::InvalidDomain("a step needs at least one type".into()));
        }
        Ok(TransformStep { types })
    }

    pub fn uniform(r: i64, t: StepType) -> Result<Self> {
        crate::domain::check_rank(r)?;
        TransformStep::new(vec![t; r as usize - 1])
    }

    /// Every one of the `2^(r−1)` type assignments.
    pub fn all(r: i64) -> Result<Vec<TransformStep>> {
        crate::domain::check_rank(r)?;
        if r > 21 {
            return Err(SegreError::DomainTooLarge(format!("2^{} step assignments", r - 1)));
        }
        let n = r as usize - 1;
        Ok((0u32..1 << n)
            .map(|mask| TransformStep {
                types: (0..n)
                    .map(|b| if mask >> b & 1 == 1 { StepType::II } else { StepType::I })
                    .collect(),
            })
            .collect())
    }

    pub fn types(&self) -> &[StepType] {
        &self.types
    }

    /// Type at sub-rank `i` (1-indexed).
    pub fn at(&self, i: i64) -> Option<StepType> {
        if i < 1 {
            return None;
        }
        self.types.get(i as usize - 1).copied()
    }

    fn check_len(&self, r: i64) -> Result<()> {
        if self.types.len() as i64 != r - 1 {
            return Err(SegreError::InvalidDomain(format!(
                "step has {} types, rank {r} needs {}",
                self.types.len(),
                r - 1
            )));
        }
        Ok(())
    }
}

impl FromStr for TransformStep {
    type Err = SegreError;

    /// Comma-separated types, e.g. `I,II,I`.
    fn from_str(s: &str) -> Result<Self> {
        TransformStep::new(s.split(',').map(str::parse).collect::<Result<_>>()?)
    }
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, t) in self.types.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Degree drops by one; `s_i` drops by `i` at type I, rises by `r − i` at type II.
pub fn apply_step(p: &SegreProfile, t: &TransformStep) -> Result<SegreProfile> {
    t.check_len(p.r)?;
    let d = checked::sub(p.d, 1, "degree")?;
    crate::domain::check_degree(d)?;
    let s = p
        .s
        .iter()
        .zip(&t.types)
        .enumerate()
        .map(|(idx, (&value, &ty))| {
            let i = idx as i64 + 1;
            match ty {
                StepType::I => checked::sub(value, i, "profile step"),
                StepType::II => checked::add(value, p.r - i, "profile step"),
            }
        })
        .collect::<Result<_>>()?;
    Ok(SegreProfile {
        g: p.g,
        r: p.r,
        d,
        s,
    })
}

/// Applies `steps` in order; an empty sequence returns `p` unchanged.
pub fn apply_steps(p: &SegreProfile, steps: &[TransformStep]) -> Result<SegreProfile> {
    steps.iter().try_fold(p.clone(), |acc, t| apply_step(&acc, t))
}

/// Tracks a single rank-`k` subbundle `F` through one transformation.
///
/// Returns the new `deg F` and the new value of `s_k(E', F')`.
pub fn subbundle_transition(
    r: i64,
    d: i64,
    k: i64,
    deg_f: i64,
    ty: StepType,
) -> Result<(i64, i64)> {
    let before = crate::invariants::segre_pair(r, d, k, deg_f)?;
    Ok(match ty {
        StepType::I => (deg_f, checked::sub(before, k, "subbundle transition")?),
        StepType::II => (
            checked::sub(deg_f, 1, "degF")?,
            checked::add(before, r - k, "subbundle transition")?,
        ),
    })
}

/// The dual transformation `E^* ⊂ E'^*`: its type at `r − i` is the flip
/// of the type at `i`.
pub fn dual_step(r: i64, t: &TransformStep) -> Result<TransformStep> {
    t.check_len(r)?;
    Ok(TransformStep {
        types: t.types.iter().rev().map(|ty| ty.flip()).collect(),
    })
}

/// Profile of the dual bundle: `(g, r, −d)` with `s'_i = s_{r−i}`.
pub fn dual_profile(p: &SegreProfile) -> SegreProfile {
    SegreProfile {
        g: p.g,
        r: p.r,
        d: -p.d,
        s: p.s.iter().rev().copied().collect(),
    }
}

/// Necessary condition for choosing `ty` at sub-rank `i`: a type II step
/// must not push `s_i` above the generic value `s_max(g, r, d−1, i)`.
pub fn type_feasible(p: &SegreProfile, i: i64, ty: StepType) -> Result<bool> {
    p.check_rank_index(i)?;
    match ty {
        StepType::I => Ok(true),
        StepType::II => {
            let raised = checked::add(p.s[i as usize - 1], p.r - i, "feasibility")?;
            Ok(raised <= s_max(p.g, p.r, p.d - 1, i)?)
        }
    }
}

/// Interval `[lo, hi]` known to contain `dim M_k(E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusInterval {
    pub lo: i64,
    pub hi: i64,
}

impl LocusInterval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo < 0 || lo > hi {
            return Err(SegreError::InvalidDomain(format!("bad locus interval [{lo}, {hi}]")));
        }
        Ok(LocusInterval { lo, hi })
    }

    /// Type I can lose at most `k` dimensions and never gains any; type II
    /// gains at most `r − k` and carries no lower guarantee.
    pub fn step(self, r: i64, k: i64, ty: StepType) -> LocusInterval {
        let cap = k * (r - k);
        let (lo, hi) = match ty {
            StepType::I => ((self.lo - k).max(0), self.hi),
            StepType::II => (0, self.hi.saturating_add(r - k)),
        };
        let hi = hi.min(cap);
        LocusInterval { lo: lo.min(hi), hi }
    }
}

/// Per-sub-rank intervals for the dimension of the maximal-subbundle loci.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusDimBounds {
    pub r: i64,
    pub intervals: Vec<LocusInterval>,
}

impl LocusDimBounds {
    pub fn new(r: i64, intervals: Vec<LocusInterval>) -> Result<Self> {
        crate::domain::check_rank(r)?;
        if intervals.len() as i64 != r - 1 {
            return Err(SegreError::InvalidDomain(format!(
                "need {} intervals, got {}",
                r - 1,
                intervals.len()
            )));
        }
        for (idx, iv) in intervals.iter().enumerate() {
            let k = idx as i64 + 1;
            if iv.lo < 0 || iv.lo > iv.hi || iv.hi > k * (r - k) {
                return Err(SegreError::InvalidDomain(format!(
                    "interval [{}, {}] at k={k} outside [0, {}]",
                    iv.lo,
                    iv.hi,
                    k * (r - k)
                )));
            }
        }
        Ok(LocusDimBounds { r, intervals })
    }

    /// For a general bundle `dim M_k(E) = ε_k` exactly.
    pub fn general(g: i64, r: i64, d: i64) -> Result<Self> {
        let intervals = (1..r)
            .map(|k| {
                let eps = crate::invariants::epsilon_k(g, r, d, k)?;
                LocusInterval::new(eps, eps)
            })
            .collect::<Result<_>>()?;
        LocusDimBounds::new(r, intervals)
    }

    /// Interval at sub-rank `k`.
    pub fn at(&self, k: i64) -> Option<LocusInterval> {
        if k < 1 {
            return None;
        }
        self.intervals.get(k as usize - 1).copied()
    }

    /// Updates every sub-rank according to a full step.
    pub fn after(&self, t: &TransformStep) -> Result<Self> {
        t.check_len(self.r)?;
        let intervals = self
            .intervals
            .iter()
            .zip(&t.types)
            .enumerate()
            .map(|(idx, (iv, &ty))| iv.step(self.r, idx as i64 + 1, ty))
            .collect();
        Ok(LocusDimBounds { r: self.r, intervals })
    }
}

/// Updates the interval at sub-rank `k` after a step of type `ty` there.
pub fn locus_dim_step(
    b: &LocusDimBounds,
    k: i64,
    ty: StepType,
    r: i64,
) -> Result<LocusDimBounds> {
    if r != b.r {
        return Err(SegreError::InvalidDomain(format!("rank {r} does not match bounds rank {}", b.r)));
    }
    crate::domain::check_sub_rank(r, k)?;
    let mut out = b.clone();
    let slot = &mut out.intervals[k as usize - 1];
    *slot = slot.step(r, k, ty);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use StepType::{I, II};

    fn step(types: &[StepType]) -> TransformStep {
        TransformStep::new(types.to_vec()).unwrap()
    }

    fn general_2_3_1() -> SegreProfile {
        SegreProfile::new(2, 3, 1, vec![4, 2]).unwrap()
    }

    #[test]
    fn general_profile_is_s_max() {
        assert_eq!(SegreProfile::general(2, 3, 1).unwrap(), general_2_3_1());
    }

    #[test]
    fn profile_rejects_bad_congruence_and_length() {
        assert!(SegreProfile::new(2, 3, 1, vec![4, 3]).is_err());
        assert!(SegreProfile::new(2, 3, 1, vec![4]).is_err());
        assert!(SegreProfile::new(2, 1, 1, vec![]).is_err());
    }

    #[test]
    fn apply_step_examples() {
        let p = general_2_3_1();
        let q = apply_step(&p, &step(&[I, I])).unwrap();
        assert_eq!((q.d(), q.values()), (0, &[3, 0][..]));
        let q = apply_step(&p, &step(&[I, II])).unwrap();
        assert_eq!((q.d(), q.values()), (0, &[3, 3][..]));
        assert_eq!(apply_steps(&p, &[]).unwrap(), p);
    }

    #[test]
    fn apply_step_rejects_wrong_length() {
        assert!(apply_step(&general_2_3_1(), &step(&[I, I, I])).is_err());
    }

    #[test]
    fn apply_step_detects_overflow() {
        let p = SegreProfile::new(2, 3, 0, vec![i64::MAX - 1, 0]).unwrap();
        let err = apply_step(&p, &step(&[II, I])).unwrap_err();
        assert!(err.is_overflow());
    }

    #[test]
    fn subbundle_transition_examples() {
        assert_eq!(subbundle_transition(3, 1, 2, 0, I).unwrap(), (0, 0));
        assert_eq!(subbundle_transition(3, 1, 2, 0, II).unwrap(), (-1, 3));
        assert_eq!(subbundle_transition(2, 0, 1, -1, I).unwrap(), (-1, 1));
    }

    #[test]
    fn dual_step_examples() {
        assert_eq!(dual_step(3, &step(&[II, I])).unwrap(), step(&[II, I]));
        assert_eq!(dual_step(4, &step(&[I, I, I])).unwrap(), step(&[II, II, II]));
        let t = step(&[I, II, II, I, I]);
        assert_eq!(dual_step(6, &dual_step(6, &t).unwrap()).unwrap(), t);
    }

    #[test]
    fn dual_profile_examples() {
        let p = general_2_3_1();
        let q = dual_profile(&p);
        assert_eq!((q.g(), q.r(), q.d(), q.values()), (2, 3, -1, &[2, 4][..]));
        assert_eq!(q.get(1).unwrap().rem_euclid(3), (-1i64).rem_euclid(3));
        assert_eq!(dual_profile(&q), p);
    }

    #[test]
    fn type_feasible_examples() {
        let p = general_2_3_1();
        // s_max(2,3,0,1) = 3 and s_max(2,3,0,2) = 3
        assert!(!type_feasible(&p, 1, II).unwrap());
        assert!(type_feasible(&p, 2, II).unwrap());
        assert!(type_feasible(&p, 1, I).unwrap());
        assert!(type_feasible(&p, 2, I).unwrap());
        assert!(type_feasible(&p, 3, I).is_err());
    }

    #[test]
    fn locus_dim_step_examples() {
        let b = LocusDimBounds::new(
            3,
            vec![LocusInterval::new(2, 2).unwrap(), LocusInterval::new(0, 2).unwrap()],
        )
        .unwrap();
        let b1 = locus_dim_step(&b, 1, I, 3).unwrap();
        assert_eq!(b1.at(1).unwrap(), LocusInterval { lo: 1, hi: 2 });
        let b2 = locus_dim_step(&b, 2, II, 3).unwrap();
        assert_eq!(b2.at(2).unwrap(), LocusInterval { lo: 0, hi: 2 });

        let zero = LocusDimBounds::new(
            3,
            vec![LocusInterval::new(0, 0).unwrap(), LocusInterval::new(0, 0).unwrap()],
        )
        .unwrap();
        let b3 = locus_dim_step(&zero, 1, II, 3).unwrap();
        assert_eq!(b3.at(1).unwrap(), LocusInterval { lo: 0, hi: 2 });
        assert!(locus_dim_step(&zero, 1, II, 4).is_err());
    }

    #[test]
    fn general_locus_bounds_are_epsilon() {
        let b = LocusDimBounds::general(2, 3, 1).unwrap();
        assert_eq!(b.at(1).unwrap(), LocusInterval { lo: 2, hi: 2 });
        assert_eq!(b.at(2).unwrap(), LocusInterval { lo: 0, hi: 0 });
    }

    #[test]
    fn step_parsing_round_trip() {
        let t: TransformStep = "I, II,I".parse().unwrap();
        assert_eq!(t, step(&[I, II, I]));
        assert_eq!(t.to_string(), "I,II,I");
        assert!("I,III".parse::<TransformStep>().is_err());
    }

    #[test]
    fn all_steps_enumerates_every_assignment() {
        let all = TransformStep::all(4).unwrap();
        assert_eq!(all.len(), 8);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn profile_json_validates() {
        let p: SegreProfile = serde_json::from_str(r#"{"g":2,"r":3,"d":1,"s":[4,2]}"#).unwrap();
        assert_eq!(p, general_2_3_1());
        assert!(serde_json::from_str::<SegreProfile>(r#"{"g":2,"r":3,"d":1,"s":[4,1]}"#).is_err());
        let t: TransformStep = serde_json::from_str(r#"["I","II"]"#).unwrap();
        assert_eq!(t, step(&[I, II]));
        let t: TransformStep = serde_json::from_str(r#""I,II""#).unwrap();
        assert_eq!(t, step(&[I, II]));
        assert!(serde_json::from_str::<TransformStep>("[]").is_err());
    }
}
