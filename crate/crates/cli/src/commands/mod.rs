mod compare;
mod fig1;
mod simulate;
mod sweep;
mod verify;

pub use compare::run_compare;
pub use fig1::{run_fig1, Fig1Run, FIG1_N_STEPS};
pub use simulate::run_simulate;
pub use sweep::run_sweep;
pub use verify::{parse_target, run_verify, VerifyRun};
