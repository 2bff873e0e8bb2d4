//! File emission: `<experiment>__<variant>__<seed>.<ext>` naming, curve
//! CSVs with a fixed column order, and a manifest that is re-checked after
//! writing so a report never lists a missing or empty file.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::report::ExperimentReport;

pub struct OutputDir {
    dir: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn file_name(experiment: &str, variant: &str, seed: &str, ext: &str) -> String {
        format!("{experiment}__{variant}__{seed}.{ext}")
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents)?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    /// Verify every written file exists and is non-empty, then return the
    /// manifest.
    pub fn manifest(&self) -> Result<Vec<String>, CliError> {
        for name in &self.written {
            let meta = fs::metadata(self.dir.join(name))?;
            if meta.len() == 0 {
                return Err(CliError::Internal(format!("emitted file {name} is empty")));
            }
        }
        Ok(self.written.clone())
    }

    /// Serialize the report (with its manifest filled in) next to the data.
    pub fn finish(
        mut self,
        mut report: ExperimentReport,
        report_name: &str,
    ) -> Result<ExperimentReport, CliError> {
        report.manifest = self.manifest()?;
        report.manifest.push(report_name.to_string());
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        self.write(report_name, &json)?;
        Ok(report)
    }
}

/// Curve CSV with the fixed header `grid_point,value_baseline,value_variant`.
pub fn curve_csv(grid: &[f64], baseline: &[f64], variant: &[f64]) -> String {
    let mut out = String::from("grid_point,value_baseline,value_variant\n");
    for ((g, b), v) in grid.iter().zip(baseline).zip(variant) {
        out.push_str(&format!("{g},{b},{v}\n"));
    }
    out
}
