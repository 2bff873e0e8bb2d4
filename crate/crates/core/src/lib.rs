//! Simulation and order-comparison toolkit for GARCH-type volatility
//! processes.
//!
//! The crate has three layers:
//!
//! * [`garch`] — innovation laws, increasing componentwise-convex update
//!   maps, seeded path simulation and the GARCH(1,1) closed form;
//! * [`orders`] — distribution carriers (exact finite-support and
//!   empirical) plus decision procedures for the usual stochastic,
//!   increasing convex, convex, peakedness and supermodular-convex
//!   comparisons;
//! * [`oracle`] — exhaustive path enumeration for finite-support
//!   innovations and an exactly-verified suite of order-propagation
//!   properties.
//!
//! Everything is deterministic given a seed: each simulated path draws
//! from its own counter-derived stream, so results never depend on how
//! work is split across threads.

pub mod garch;
pub mod math;
pub mod oracle;
pub mod orders;

pub use garch::{
    closed_form_variance, compose_g, logreturn_sums, simulate_paths, GarchError, GarchParams,
    InitialStateSpec, InnovationFamily, InnovationSpec, ParamField, PathBatch, RecursionKind,
    RecursionMap,
};
pub use oracle::{
    builtin_scenarios, convexity_check, make_dilation, run_builtin_suite, verify_theorem,
    DilationPair, ExactPathTree, OracleError, TheoremId, TheoremReport, TheoremScenario,
};
pub use orders::{
    check_cx, check_icx, check_peakedness, check_st, check_supermodular_cx, density_crossings,
    kurtosis_beta2, sign_changes, Direction, DiscreteDist, Dist, DistError, EmpiricalDist,
    GridSpec, MultivariateDist, OrderVerdict, Relation, TestFunctionFamily,
};
