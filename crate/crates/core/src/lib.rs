//! Exact arithmetic for Segre invariants of vector bundles on smooth
//! projective curves.
//!
//! Bundles are represented only by their numeric class `(g, r, d)`. The crate
//! computes the generic Segre invariants `s_k`, the admissible values of `s_k`,
//! dimensions of the strata they cut out of the moduli space, and replays the
//! elementary-transformation argument that shows those strata are nonempty.
//!
//! Everything is integer or exact rational arithmetic; there is no floating
//! point anywhere in the crate.
//!
//! * [`invariants`]: closed forms for bounds, `ε_k`, `s_max`, strata.
//! * [`transform`]: elementary transformations acting on Segre profiles.
//! * [`construct`]: certificates for the existence argument.
//! * [`oracle`]: brute-force verifiers, independent of the closed forms.

pub mod construct;
pub mod domain;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod rational;
pub mod transform;

pub use construct::{
    choose_nk, genus_requirement, paper_chain, sharp_feasibility, ConstructionCertificate,
    GenusRequirement, PaperChain, Reduction, StepCertificate, Verdict,
};
pub use domain::{BundleClass, CurveClass, SubbundlePair};
pub use error::{Result, SegreError};
pub use invariants::{
    dual_params, epsilon_k, generic_dim, hirschowitz_bound, maximal_locus_dim,
    mukai_sakai_bound, nested_bounds, s_max, segre_pair, strata_table, stratum_dim, valid_s,
    NestedBounds, StratumDescriptor,
};
pub use rational::Rational;
pub use transform::{
    apply_step, apply_steps, dual_profile, dual_step, locus_dim_step, subbundle_transition,
    type_feasible, LocusDimBounds, LocusInterval, SegreProfile, StepType, TransformStep,
};
