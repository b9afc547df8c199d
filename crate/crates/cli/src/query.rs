//! Queries shared by the subcommands and the batch mode, and the reports they
//! produce.

use serde::{Deserialize, Serialize};

use segre_core::oracle::{
    brute_nested, brute_valid_s, fuzz_congruence, min_adversarial, Filter, SearchSpec,
};
use segre_core::{
    apply_step, epsilon_k, hirschowitz_bound, mukai_sakai_bound, nested_bounds, s_max,
    sharp_feasibility, strata_table, type_feasible, valid_s, ConstructionCertificate,
    LocusDimBounds, LocusInterval, SegreError, SegreProfile, StepType, StratumDescriptor,
    TransformStep, Verdict,
};

/// One computation, as read from a batch line (`{"command": "strata", ...}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    Bound {
        g: i64,
        r: i64,
        k: i64,
    },
    Smax {
        g: i64,
        r: i64,
        d: i64,
        #[serde(default)]
        k: Option<i64>,
    },
    Strata {
        g: i64,
        r: i64,
        d: i64,
    },
    Construct {
        g: i64,
        r: i64,
        d: i64,
        k: i64,
        s: i64,
    },
    Transform {
        g: i64,
        r: i64,
        d: i64,
        /// Starting profile; the general profile when absent.
        #[serde(default)]
        s: Option<Vec<i64>>,
        steps: Vec<TransformStep>,
        /// Replace type II by type I wherever the cap filter rejects it.
        #[serde(default)]
        filtered: bool,
    },
    Verify {
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_trials")]
        trials: u64,
    },
}

fn default_trials() -> u64 {
    1000
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub g: i64,
    pub r: i64,
    pub k: i64,
    pub hirschowitz: i64,
    pub mukai_sakai: i64,
    /// The rank-2 bound `s_1 ≤ g`; absent for higher rank.
    pub segre: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmaxRow {
    pub k: i64,
    pub eps: i64,
    pub s_max: i64,
    pub valid_s: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmaxReport {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub rows: Vec<SmaxRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrataReport {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub strata: Vec<StratumDescriptor>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub index: usize,
    pub requested: Option<TransformStep>,
    pub applied: Option<TransformStep>,
    pub profile: SegreProfile,
    pub locus: LocusDimBounds,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    pub g: i64,
    pub r: i64,
    pub filtered: bool,
    pub stages: Vec<Stage>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Report {
    Bound(BoundReport),
    Smax(SmaxReport),
    Strata(StrataReport),
    Construct(ConstructionCertificate),
    Transform(TransformReport),
    Verify(VerifyReport),
}

impl Report {
    /// 1 for an `Unknown` verdict, an empty table, or a failed verification.
    pub fn status(&self) -> i32 {
        let soft_failure = match self {
            Report::Construct(c) => c.verdict == Verdict::Unknown,
            Report::Strata(t) => t.strata.is_empty(),
            Report::Smax(t) => t.rows.iter().all(|row| row.valid_s.is_empty()),
            Report::Verify(v) => !v.passed,
            Report::Bound(_) | Report::Transform(_) => false,
        };
        i32::from(soft_failure)
    }
}

pub fn execute(query: &Query) -> Result<Report, SegreError> {
    match *query {
        Query::Bound { g, r, k } => Ok(Report::Bound(BoundReport {
            g,
            r,
            k,
            hirschowitz: hirschowitz_bound(g, r, k)?,
            mukai_sakai: mukai_sakai_bound(g, r, k)?,
            segre: (r == 2).then_some(g),
        })),
        Query::Smax { g, r, d, k } => {
            segre_core::BundleClass::new(g, r, d)?;
            let ks: Vec<i64> = match k {
                Some(k) => vec![k],
                None => (1..r).collect(),
            };
            let rows = ks
                .into_iter()
                .map(|k| {
                    Ok(SmaxRow {
                        k,
                        eps: epsilon_k(g, r, d, k)?,
                        s_max: s_max(g, r, d, k)?,
                        valid_s: valid_s(g, r, d, k)?,
                    })
                })
                .collect::<Result<_, SegreError>>()?;
            Ok(Report::Smax(SmaxReport { g, r, d, rows }))
        }
        Query::Strata { g, r, d } => Ok(Report::Strata(StrataReport {
            g,
            r,
            d,
            strata: strata_table(g, r, d)?,
        })),
        Query::Construct { g, r, d, k, s } => {
            Ok(Report::Construct(sharp_feasibility(g, r, d, k, s)?))
        }
        Query::Transform {
            g,
            r,
            d,
            ref s,
            ref steps,
            filtered,
        } => transform(g, r, d, s.as_deref(), steps, filtered).map(Report::Transform),
        Query::Verify { seed, trials } => Ok(Report::Verify(verify(seed, trials)?)),
    }
}

fn transform(
    g: i64,
    r: i64,
    d: i64,
    s: Option<&[i64]>,
    steps: &[TransformStep],
    filtered: bool,
) -> Result<TransformReport, SegreError> {
    let (mut profile, mut locus) = match s {
        Some(values) => {
            let p = SegreProfile::new(g, r, d, values.to_vec())?;
            // nothing is known about the loci of an arbitrary profile
            let full = (1..r)
                .map(|k| LocusInterval::new(0, k * (r - k)))
                .collect::<Result<_, _>>()?;
            (p, LocusDimBounds::new(r, full)?)
        }
        None => (
            SegreProfile::general(g, r, d)?,
            LocusDimBounds::general(g, r, d)?,
        ),
    };
    let mut stages = vec![Stage {
        index: 0,
        requested: None,
        applied: None,
        profile: profile.clone(),
        locus: locus.clone(),
    }];
    for (n, step) in steps.iter().enumerate() {
        let applied = if filtered {
            let types = step
                .types()
                .iter()
                .enumerate()
                .map(|(idx, &ty)| {
                    Ok(if type_feasible(&profile, idx as i64 + 1, ty)? {
                        ty
                    } else {
                        StepType::I
                    })
                })
                .collect::<Result<_, SegreError>>()?;
            TransformStep::new(types)?
        } else {
            step.clone()
        };
        profile = apply_step(&profile, &applied)?;
        locus = locus.after(&applied)?;
        stages.push(Stage {
            index: n + 1,
            requested: Some(step.clone()),
            applied: Some(applied),
            profile: profile.clone(),
            locus: locus.clone(),
        });
    }
    Ok(TransformReport {
        g,
        r,
        filtered,
        stages,
    })
}

struct Tally {
    check: Check,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            check: Check {
                name: name.into(),
                cases: 0,
                failures: 0,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.check.cases += 1;
        if !ok {
            self.check.failures += 1;
            if self.check.first_failure.is_none() {
                self.check.first_failure = Some(detail());
            }
        }
    }
}

/// Brute-force oracles against the closed forms on small grids, plus the
/// seeded fuzz run.
fn verify(seed: u64, trials: u64) -> Result<VerifyReport, SegreError> {
    let mut checks = Vec::new();

    let mut t = Tally::new("valid_s_vs_degree_sweep");
    for g in 2..=10 {
        for r in 2..=6 {
            for d in -2 * r..=2 * r {
                for k in 1..r {
                    let closed = valid_s(g, r, d, k)?;
                    let brute = brute_valid_s(g, r, d, k);
                    t.record(closed == brute, || format!("(g={g},r={r},d={d},k={k})"));
                }
            }
        }
    }
    checks.push(t.check);

    let mut t = Tally::new("adversary_vs_closed_form");
    for r in 2..=4 {
        for d in 0..r {
            for k in 1..r {
                for n in 0..=4usize {
                    let spec = SearchSpec::from_general(2, r, d, n, k, Filter::None)?;
                    let min = min_adversarial(&spec);
                    for i in 1..r {
                        let closed = s_max(2, r, d, i)? - n as i64 * i;
                        t.record(min.at(i) == Some(closed), || {
                            format!("(g=2,r={r},d={d},k={k},N={n},i={i})")
                        });
                    }
                }
            }
        }
    }
    checks.push(t.check);

    let mut t = Tally::new("nested_bounds_vs_brute");
    for r in 2..=6 {
        for k in 1..r {
            for d in -2 * r..=2 * r {
                for s in valid_s(6, r, d, k)? {
                    for nu in 1..=(k - 1).max(r - k - 1) {
                        let bound = nested_bounds(r, k, s, nu)?;
                        let brute = brute_nested(r, d, k, s, nu)?;
                        let sub_ok = match (bound.sub_bound, brute.sub_min) {
                            (Some(b), Some(m)) => b.cmp_integer(m).is_le(),
                            (None, None) => true,
                            _ => false,
                        };
                        let quot_ok = match (bound.quot_bound, brute.quot_min) {
                            (Some(b), Some(m)) => b.cmp_integer(m).is_le(),
                            (None, None) => true,
                            _ => false,
                        };
                        t.record(sub_ok && quot_ok, || {
                            format!("(r={r},d={d},k={k},s={s},nu={nu})")
                        });
                    }
                }
            }
        }
    }
    checks.push(t.check);

    let fuzz = fuzz_congruence(seed, trials);
    checks.push(Check {
        name: "fuzz_congruence_duality_caps".into(),
        cases: fuzz.steps_checked,
        failures: fuzz.failures.len() as u64,
        first_failure: fuzz
            .failures
            .first()
            .map(|f| format!("trial {} {}: {}", f.trial, f.check, f.detail)),
    });

    let passed = checks.iter().all(|c| c.failures == 0);
    Ok(VerifyReport {
        seed,
        trials,
        checks,
        passed,
    })
}
