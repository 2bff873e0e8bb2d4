//! Distribution carriers and stochastic-order decision procedures.
//!
//! Every comparison works the same way: build a common evaluation grid,
//! compute a dominance gap curve oriented so "A below B" means nonnegative
//! gaps, and decide a direction against an explicit tolerance band. Exact
//! finite-support inputs get a 1e-12 band; Monte Carlo inputs get a
//! DKW-flavoured band, because the population statements under test say
//! nothing about sampling noise.

mod checks;
mod dist;
mod grid;
mod kde;
mod multivariate;
mod verdict;

pub use checks::{
    check_cx, check_icx, check_peakedness, check_st, default_mean_tolerance, default_tolerance,
    integrated_survival_weighted, kurtosis_beta2, sign_changes, SignChangeSummary,
};
pub use dist::{DiscreteDist, Dist, DistError, EmpiricalDist};
pub use grid::{comparison_grid, GridSpec};
pub use kde::{
    density_crossings, kernel_density, silverman_bandwidth, BandwidthSpec, DensityCrossings,
    DensityCurve,
};
pub use multivariate::{
    check_supermodular_cx, FamilyKind, HingeForm, MultivariateDist, TestFunction,
    TestFunctionFamily,
};
pub use verdict::{Direction, EvidenceCurve, OrderVerdict, Relation};
