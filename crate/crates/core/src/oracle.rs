//! Brute-force verifiers.
//!
//! Nothing here calls the closed forms it is meant to check. Generic values
//! are found by scanning the Hirschowitz band for the right residue, Segre
//! values are recomputed from `k·deg E − r·deg F`, and transformations are
//! replayed by tracking subbundle degrees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SegreError};
use crate::transform::{apply_step, dual_profile, dual_step, type_feasible, SegreProfile, StepType, TransformStep};

pub const MAX_SEARCH_RANK: i64 = 5;
pub const MAX_SEARCH_STEPS: usize = 6;

/// Value of `s_i` for a general bundle: the unique member of the band
/// `[i(r−i)(g−1), i(r−i)(g−1) + r − 1]` congruent to `i·d` mod `r`.
fn generic_value(g: i64, r: i64, d: i64, i: i64) -> i64 {
    let floor = i * (r - i) * (g - 1);
    (floor..floor + r)
        .find(|v| (v - i * d).rem_euclid(r) == 0)
        .expect("a band of width r holds every residue")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    None,
    CapFiltered,
}

/// An exhaustive adversarial search over `steps` transformations that are
/// of type I at `controlled_rank`, with every other rank free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub r: i64,
    pub g: i64,
    pub d0: i64,
    pub initial: Vec<i64>,
    pub steps: usize,
    pub controlled_rank: i64,
    pub filter: Filter,
}

impl SearchSpec {
    pub fn new(
        g: i64,
        r: i64,
        d0: i64,
        initial: Vec<i64>,
        steps: usize,
        controlled_rank: i64,
        filter: Filter,
    ) -> Result<Self> {
        if g < 2 || r < 2 {
            return Err(SegreError::InvalidDomain(format!("need g >= 2 and r >= 2, got g={g}, r={r}")));
        }
        if r > MAX_SEARCH_RANK || steps > MAX_SEARCH_STEPS {
            return Err(SegreError::DomainTooLarge(format!(
                "exhaustive search needs r <= {MAX_SEARCH_RANK} and N <= {MAX_SEARCH_STEPS}, got r={r}, N={steps}"
            )));
        }
        if controlled_rank < 1 || controlled_rank >= r {
            return Err(SegreError::InvalidDomain(format!("controlled rank {controlled_rank} outside 1..r")));
        }
        if initial.len() as i64 != r - 1 {
            return Err(SegreError::InvalidDomain(format!("initial profile needs {} entries", r - 1)));
        }
        for (idx, &v) in initial.iter().enumerate() {
            let i = idx as i64 + 1;
            if (v - i * d0).rem_euclid(r) != 0 {
                return Err(SegreError::InvalidDomain(format!("s_{i} = {v} not congruent to {i}*{d0} mod {r}")));
            }
        }
        Ok(SearchSpec {
            r,
            g,
            d0,
            initial,
            steps,
            controlled_rank,
            filter,
        })
    }

    /// Starts from the general profile of `(g, r, d0)`.
    pub fn from_general(g: i64, r: i64, d0: i64, steps: usize, controlled_rank: i64, filter: Filter) -> Result<Self> {
        let initial = (1..r).map(|i| generic_value(g, r, d0, i)).collect();
        SearchSpec::new(g, r, d0, initial, steps, controlled_rank, filter)
    }
}

/// Minimum of every `s_i` over all explored sequences, indexed by `i − 1`.
/// The controlled rank is included; its value does not depend on the adversary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversarialMin {
    pub per_rank: Vec<i64>,
    pub sequences: u64,
}

impl AdversarialMin {
    fn empty(len: usize) -> Self {
        AdversarialMin {
            per_rank: vec![i64::MAX; len],
            sequences: 0,
        }
    }

    /// Associative and commutative, so shards combine in any order.
    pub fn merge(mut self, other: &AdversarialMin) -> AdversarialMin {
        for (a, b) in self.per_rank.iter_mut().zip(&other.per_rank) {
            *a = (*a).min(*b);
        }
        self.sequences += other.sequences;
        self
    }

    pub fn at(&self, i: i64) -> Option<i64> {
        if i < 1 {
            return None;
        }
        self.per_rank.get(i as usize - 1).copied()
    }
}

struct Search<'a> {
    spec: &'a SearchSpec,
    best: AdversarialMin,
}

impl Search<'_> {
    /// `deg[i-1]` is the degree of a tracked rank-`i` subbundle realizing `s_i`.
    fn explore(&mut self, depth: usize, d: i64, deg: &mut [i64]) {
        let r = self.spec.r;
        if depth == self.spec.steps {
            self.best.sequences += 1;
            for (idx, &f) in deg.iter().enumerate() {
                let value = (idx as i64 + 1) * d - r * f;
                let slot = &mut self.best.per_rank[idx];
                *slot = (*slot).min(value);
            }
            return;
        }
        let free: Vec<usize> = (0..deg.len()).filter(|&idx| idx as i64 + 1 != self.spec.controlled_rank).collect();
        for mask in 0u32..1 << free.len() {
            let mut next = deg.to_vec();
            let mut allowed = true;
            for (bit, &idx) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    // F is not contained in E': it loses a degree
                    next[idx] -= 1;
                    if self.spec.filter == Filter::CapFiltered {
                        let i = idx as i64 + 1;
                        let value = i * (d - 1) - r * next[idx];
                        if value > generic_value(self.spec.g, r, d - 1, i) {
                            allowed = false;
                            break;
                        }
                    }
                }
            }
            if allowed {
                self.explore(depth + 1, d - 1, &mut next);
            }
        }
    }
}

fn initial_degrees(spec: &SearchSpec) -> Vec<i64> {
    spec.initial
        .iter()
        .enumerate()
        .map(|(idx, &s)| ((idx as i64 + 1) * spec.d0 - s) / spec.r)
        .collect()
}

/// Exact minimum of each `s_i` after `N` steps, over all `(2^(r−2))^N`
/// adversarial type assignments.
pub fn min_adversarial(spec: &SearchSpec) -> AdversarialMin {
    let mut search = Search {
        spec,
        best: AdversarialMin::empty(spec.initial.len()),
    };
    let mut deg = initial_degrees(spec);
    search.explore(0, spec.d0, &mut deg);
    search.best
}

/// The same search split by the assignment chosen at the first step.
pub fn min_adversarial_shards(spec: &SearchSpec) -> Vec<AdversarialMin> {
    if spec.steps == 0 {
        return vec![min_adversarial(spec)];
    }
    let len = spec.initial.len();
    let free = len - 1;
    (0u32..1 << free)
        .filter_map(|mask| {
            let mut deg = initial_degrees(spec);
            let mut bit = 0;
            for (idx, f) in deg.iter_mut().enumerate() {
                if idx as i64 + 1 == spec.controlled_rank {
                    continue;
                }
                if mask >> bit & 1 == 1 {
                    *f -= 1;
                    if spec.filter == Filter::CapFiltered {
                        let i = idx as i64 + 1;
                        let value = i * (spec.d0 - 1) - spec.r * *f;
                        if value > generic_value(spec.g, spec.r, spec.d0 - 1, i) {
                            return None;
                        }
                    }
                }
                bit += 1;
            }
            let mut search = Search {
                spec,
                best: AdversarialMin::empty(len),
            };
            search.explore(1, spec.d0 - 1, &mut deg);
            Some(search.best)
        })
        .collect()
}

/// All `s = k·d − r·deg F` with `0 < s ≤` the generic value, found by sweeping
/// `deg F`.
pub fn brute_valid_s(g: i64, r: i64, d: i64, k: i64) -> Vec<i64> {
    let top = generic_value(g, r, d, k);
    let lo = (k * d - top).div_euclid(r) - 1;
    let hi = (k * d).div_euclid(r) + 1;
    let mut found: Vec<i64> = (lo..=hi)
        .map(|deg_f| k * d - r * deg_f)
        .filter(|&s| s > 0 && s <= top)
        .collect();
    found.sort_unstable();
    found
}

/// Minimum Segre values of nested subbundles, forced only by the stability
/// of `E`. `None` marks a side whose `ν`-range is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedMinimum {
    pub nu: i64,
    /// `min ν·deg F − k·deg F'` over rank-`ν` `F' ⊂ F ⊂ E` with `ν·d − r·deg F' ≥ 1`.
    pub sub_min: Option<i64>,
    /// `min (r−k)·deg Q − q·deg(E/F)` over rank-`q = r−k−ν` quotients `Q` of
    /// `E/F` with `r·deg Q − q·d ≥ 1`.
    pub quot_min: Option<i64>,
}

/// Requires `s ≡ k·d (mod r)`.
pub fn brute_nested(r: i64, d: i64, k: i64, s: i64, nu: i64) -> Result<NestedMinimum> {
    if r < 2 || k < 1 || k >= r {
        return Err(SegreError::InvalidDomain(format!("need r >= 2 and 1 <= k < r, got r={r}, k={k}")));
    }
    if (k * d - s).rem_euclid(r) != 0 {
        return Err(SegreError::InvalidDomain(format!("s = {s} not congruent to k*d mod r")));
    }
    let deg_f = (k * d - s) / r;
    let deg_g = d - deg_f;
    // the optimum sits at the stability boundary, which is well inside this window
    let reach = d.abs() + s.abs() + 4 * r;

    let sub_min = (1..k).contains(&nu).then(|| {
        (-reach..=reach)
            .filter(|&f| nu * d - r * f >= 1)
            .map(|f| nu * deg_f - k * f)
            .min()
            .expect("window contains feasible degrees")
    });

    let q = r - k - nu;
    let quot_min = (1..r - k).contains(&nu).then(|| {
        (-reach..=reach)
            .filter(|&deg_q| r * deg_q - q * d >= 1)
            .map(|deg_q| (r - k) * deg_q - q * deg_g)
            .min()
            .expect("window contains feasible degrees")
    });

    Ok(NestedMinimum { nu, sub_min, quot_min })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: u64,
    pub steps_checked: u64,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random profiles and step sequences checked for congruence preservation,
/// duality conjugation, and the cap filter. Deterministic in `seed`.
pub fn fuzz_congruence(seed: u64, trials: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport {
        seed,
        trials,
        steps_checked: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        if let Err(err) = fuzz_trial(&mut rng, trial, &mut report) {
            report.failures.push(FuzzFailure {
                trial,
                check: "error".into(),
                detail: err.to_string(),
            });
        }
    }
    report
}

fn fuzz_trial(rng: &mut ChaCha8Rng, trial: u64, report: &mut FuzzReport) -> Result<()> {
    let r: i64 = rng.gen_range(2..=8);
    let g: i64 = rng.gen_range(2..=12);
    let d: i64 = rng.gen_range(-3 * r..=3 * r);
    let start: Vec<i64> = (1..r)
        .map(|i| generic_value(g, r, d, i) - r * rng.gen_range(0..=3))
        .collect();
    let mut free = SegreProfile::new(g, r, d, start)?;
    let mut filtered = free.clone();
    let len: usize = rng.gen_range(1..=8);

    let mut fail = |check: &str, detail: String| {
        report.failures.push(FuzzFailure {
            trial,
            check: check.into(),
            detail,
        })
    };

    for _ in 0..len {
        let types: Vec<StepType> = (1..r)
            .map(|_| if rng.gen_bool(0.5) { StepType::II } else { StepType::I })
            .collect();
        let step = TransformStep::new(types.clone())?;
        let next = apply_step(&free, &step)?;

        for (idx, &v) in next.values().iter().enumerate() {
            let i = idx as i64 + 1;
            if (v - i * next.d()).rem_euclid(r) != 0 {
                fail("congruence", format!("s_{i} = {v} at d = {}", next.d()));
            }
        }

        let back = apply_step(&dual_profile(&next), &dual_step(r, &step)?)?;
        if back != dual_profile(&free) {
            fail("duality", format!("step {step} from {:?}", free.values()));
        }

        let mut chosen = Vec::with_capacity(types.len());
        for (idx, &ty) in types.iter().enumerate() {
            let i = idx as i64 + 1;
            chosen.push(if type_feasible(&filtered, i, ty)? { ty } else { StepType::I });
        }
        filtered = apply_step(&filtered, &TransformStep::new(chosen)?)?;
        for (idx, &v) in filtered.values().iter().enumerate() {
            let i = idx as i64 + 1;
            let cap = i * (r - i) * (g - 1) + r - 1;
            if v > cap {
                fail("cap", format!("s_{i} = {v} exceeds {cap} at d = {}", filtered.d()));
            }
        }

        free = next;
        report.steps_checked += 1;
    }
    Ok(())
}
