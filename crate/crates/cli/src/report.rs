use serde::{Deserialize, Serialize};

use garch_orders::orders::OrderVerdict;

pub const REPORT_SCHEMA: u32 = 1;

/// Moments of one variant's Sₙ sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantSummary {
    pub name: String,
    pub mean: f64,
    pub variance: f64,
    pub beta2: f64,
    pub n_paths: usize,
}

/// A labelled order verdict inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    #[serde(flatten)]
    pub verdict: OrderVerdict,
}

/// Top-level JSON report emitted by every experiment command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub experiment: String,
    pub seed: u64,
    pub variants: Vec<VariantSummary>,
    pub verdicts: Vec<NamedVerdict>,
    /// Files written by the run, relative to the output directory.
    pub manifest: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, seed: u64) -> Self {
        ExperimentReport {
            schema: REPORT_SCHEMA,
            experiment: experiment.into(),
            seed,
            variants: Vec::new(),
            verdicts: Vec::new(),
            manifest: Vec::new(),
            notes: Vec::new(),
        }
    }
}

/// Summary statistics of a sample of sums.
pub fn summarize(name: &str, sums: &[f64]) -> VariantSummary {
    let n = sums.len() as f64;
    let mean = sums.iter().sum::<f64>() / n;
    let variance = sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
    let m2 = sums.iter().map(|s| s * s).sum::<f64>() / n;
    let m4 = sums.iter().map(|s| s * s * s * s).sum::<f64>() / n;
    VariantSummary {
        name: name.to_string(),
        mean,
        variance,
        beta2: m4 / (m2 * m2),
        n_paths: sums.len(),
    }
}
