//! Shared fixtures for the criterion benches.

use garch_orders::garch::{GarchParams, InnovationSpec, RecursionMap};

pub fn bench_params() -> GarchParams {
    GarchParams::new(0.2, 0.2, 0.2).expect("valid bench parameters")
}

pub fn bench_recursion() -> RecursionMap {
    RecursionMap::garch11(bench_params())
}

pub fn bench_innovations() -> InnovationSpec {
    InnovationSpec::standard_gaussian()
}
