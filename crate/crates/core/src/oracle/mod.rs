//! Exact, enumeration-based verification machinery for finite-support
//! innovations: exhaustive path trees, sign-vector symmetrization probes,
//! mean-preserving-spread constructors, and the theorem suite built on top
//! of them. "Exact" means closed-form arithmetic over enumerated outcomes,
//! asserted with 1e-12 slack; no rational arithmetic is involved.

mod dilation;
mod symmetrize;
mod theorems;
mod tree;

pub use dilation::{make_dilation, DilationPair};
pub use symmetrize::{
    convexity_check, even_grid, symmetrize_h, symmetrize_supermodular, ConvexityCheck, ScalarFn,
};
pub use theorems::{
    builtin_scenarios, run_builtin_suite, verify_theorem, Perturbation, PremiseCheck,
    TheoremId, TheoremReport, TheoremScenario,
};
pub use tree::{ExactPathTree, PathOutcome, SignVector, SignVectorSet, ENUMERATION_LIMIT};

use thiserror::Error;

use crate::garch::GarchError;
use crate::orders::DistError;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("enumeration would produce {estimated} outcomes, over the {limit} limit")]
    EnumerationTooLarge { estimated: u128, limit: u64 },

    #[error("{m} sign coordinates would need 2^{m} vectors; the cap is 2^20")]
    TooManySignVectors { m: usize },

    #[error("state diverged during enumeration at step {step}: {state}")]
    StateDiverged { step: usize, state: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("dilation construction failed: {0}")]
    DilationFailed(String),

    #[error(transparent)]
    Dist(#[from] DistError),

    #[error(transparent)]
    Garch(#[from] GarchError),
}
