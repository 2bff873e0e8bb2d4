//! Plain path export: simulate the configured model and write one CSV row
//! per path.

use garch_orders::garch::simulate_paths;

use crate::config::ResolvedConfig;
use crate::error::CliError;
use crate::output::OutputDir;
use crate::report::{summarize, ExperimentReport};

pub fn run_simulate(resolved: &ResolvedConfig) -> Result<ExperimentReport, CliError> {
    let seed_tag = resolved.seed.to_string();
    let recursion = resolved.recursion()?;
    let batch = simulate_paths(
        &recursion,
        &resolved.innovations,
        &resolved.init,
        resolved.n_steps,
        resolved.n_paths,
        resolved.seed,
    )?;
    let mut out = OutputDir::create(&resolved.out_dir)?;
    out.write(
        &OutputDir::file_name("simulate-paths", &resolved.recursion_label, &seed_tag, "csv"),
        &batch.to_csv(),
    )?;

    let mut report = ExperimentReport::new("simulate", resolved.seed);
    report
        .variants
        .push(summarize(&resolved.recursion_label, &batch.logreturn_sums()));
    report
        .notes
        .push(format!("innovations: {}", resolved.innovations.label()));
    let report_name = OutputDir::file_name("simulate", "report", &seed_tag, "json");
    out.finish(report, &report_name)
}
