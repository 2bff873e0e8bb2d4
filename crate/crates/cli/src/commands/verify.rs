//! Exact theorem verification front end: builtin suites per theorem id, or
//! scenarios loaded from a JSON file.

use std::path::Path;

use garch_orders::oracle::{
    run_builtin_suite, verify_theorem, TheoremId, TheoremReport, TheoremScenario,
};

use crate::error::CliError;
use crate::output::OutputDir;

pub struct VerifyRun {
    pub reports: Vec<TheoremReport>,
    pub passed: usize,
    pub failed: usize,
    pub premise_failures: usize,
}

pub fn parse_target(target: &str) -> Result<Vec<TheoremId>, CliError> {
    if target == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    TheoremId::parse(target).map(|t| vec![t]).ok_or_else(|| {
        let valid: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
        CliError::config(format!(
            "unknown theorem id `{target}`; valid ids: all, {}",
            valid.join(", ")
        ))
    })
}

fn load_scenarios(path: &Path) -> Result<Vec<TheoremScenario>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    // accept a single scenario object or an array of them
    if let Ok(one) = serde_json::from_str::<TheoremScenario>(&text) {
        return Ok(vec![one]);
    }
    serde_json::from_str::<Vec<TheoremScenario>>(&text)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn run_verify(
    target: &str,
    scenario_file: Option<&Path>,
    out_dir: &Path,
) -> Result<VerifyRun, CliError> {
    let ids = parse_target(target)?;
    if scenario_file.is_some() && ids.len() != 1 {
        return Err(CliError::config(
            "--scenario-file needs a single theorem id, not `all`",
        ));
    }

    let mut out = OutputDir::create(out_dir)?;
    let mut all_reports: Vec<TheoremReport> = Vec::new();
    for id in &ids {
        let reports = match scenario_file {
            Some(path) => {
                let mut reports = Vec::new();
                for scenario in load_scenarios(path)? {
                    reports.extend(verify_theorem(*id, &scenario)?);
                }
                reports
            }
            None => run_builtin_suite(*id)?,
        };
        let json = serde_json::to_string_pretty(&reports)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        out.write(
            &OutputDir::file_name("verify", id.as_str(), "exact", "json"),
            &json,
        )?;
        all_reports.extend(reports);
    }
    if ids.len() > 1 {
        let json = serde_json::to_string_pretty(&all_reports)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        out.write(&OutputDir::file_name("verify", "all", "exact", "json"), &json)?;
    }
    out.manifest()?;

    let passed = all_reports.iter().filter(|r| r.passed).count();
    let failed = all_reports.len() - passed;
    let premise_failures = all_reports.iter().filter(|r| r.premise_failed()).count();
    Ok(VerifyRun {
        reports: all_reports,
        passed,
        failed,
        premise_failures,
    })
}

impl VerifyRun {
    /// 0 all pass, 3 premise failure, 4 conclusion failure.
    pub fn exit_code(&self) -> i32 {
        if self.premise_failures > 0 {
            crate::error::EXIT_PREMISE
        } else if self.failed > 0 {
            crate::error::EXIT_VERDICT
        } else {
            crate::error::EXIT_OK
        }
    }

    pub fn print_lines(&self) {
        for r in &self.reports {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let margin = r
                .conclusion
                .as_ref()
                .map(|c| format!("margin {:+.3e}", c.margin))
                .unwrap_or_else(|| "premise failure".to_string());
            println!("{status} {} {} [{}] {margin}", r.theorem, r.scenario, r.item);
        }
        println!(
            "verify: {} passed, {} failed ({} premise failures)",
            self.passed, self.failed, self.premise_failures
        );
    }
}
