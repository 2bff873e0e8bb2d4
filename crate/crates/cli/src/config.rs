//! Experiment configuration: a single JSON file with strict key checking
//! (silent typos corrupt experiments), merged with command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use garch_orders::garch::{
    GarchParams, InitialStateSpec, InnovationSpec, RecursionKind, RecursionMap,
};

use crate::error::CliError;

/// Statistical experiments refuse to run on fewer paths than this.
pub const MIN_STATISTICAL_PATHS: usize = 1000;

pub const DEFAULT_N_STEPS: usize = 50;
pub const DEFAULT_N_PATHS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Garch11,
    M1Custom,
    M2Custom,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub alpha0: f64,
    pub alpha1: f64,
    pub beta1: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig {
            alpha0: 0.2,
            alpha1: 0.2,
            beta1: 0.2,
        }
    }
}

impl ParamsConfig {
    pub fn build(&self, allow_nonstationary: bool) -> Result<GarchParams, CliError> {
        if allow_nonstationary {
            GarchParams::new_unchecked(self.alpha0, self.alpha1, self.beta1).map_err(Into::into)
        } else {
            GarchParams::new(self.alpha0, self.alpha1, self.beta1).map_err(Into::into)
        }
    }
}

/// One parameter override relative to the baseline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantOverride {
    pub name: String,
    #[serde(default)]
    pub alpha0: Option<f64>,
    #[serde(default)]
    pub alpha1: Option<f64>,
    #[serde(default)]
    pub beta1: Option<f64>,
}

impl VariantOverride {
    pub fn apply(&self, base: &ParamsConfig) -> ParamsConfig {
        ParamsConfig {
            alpha0: self.alpha0.unwrap_or(base.alpha0),
            alpha1: self.alpha1.unwrap_or(base.alpha1),
            beta1: self.beta1.unwrap_or(base.beta1),
        }
    }

    pub fn is_noop(&self) -> bool {
        self.alpha0.is_none() && self.alpha1.is_none() && self.beta1.is_none()
    }
}

/// On-disk experiment configuration. Unknown keys are hard errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub model: Option<ModelKind>,
    /// Builtin recursion label for custom models.
    #[serde(default)]
    pub recursion: Option<String>,
    #[serde(default)]
    pub params: Option<ParamsConfig>,
    #[serde(default)]
    pub innovations: Option<InnovationSpec>,
    #[serde(default)]
    pub init: Option<InitialStateSpec>,
    #[serde(default)]
    pub n_steps: Option<usize>,
    #[serde(default)]
    pub n_paths: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub variants: Vec<VariantOverride>,
    #[serde(default)]
    pub outputs: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }
}

/// Command-line overrides that beat whatever the config file says.
#[derive(Debug, Clone, Default)]
pub struct CliOverrides {
    pub seed: Option<u64>,
    pub paths: Option<usize>,
    pub out: Option<PathBuf>,
    pub allow_nonstationary: bool,
}

/// A fully resolved experiment: everything commands need, validated.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub model: ModelKind,
    pub recursion_label: String,
    pub params_config: ParamsConfig,
    pub params: GarchParams,
    pub innovations: InnovationSpec,
    pub init: InitialStateSpec,
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub variants: Vec<VariantOverride>,
    pub allow_nonstationary: bool,
}

impl ResolvedConfig {
    pub fn resolve(
        config: Option<&ExperimentConfig>,
        overrides: &CliOverrides,
    ) -> Result<Self, CliError> {
        let empty = ExperimentConfig::default();
        let cfg = config.unwrap_or(&empty);

        let model = cfg.model.unwrap_or(ModelKind::Garch11);
        let recursion_label = match (model, cfg.recursion.as_deref()) {
            (ModelKind::Garch11, None) => "garch11-var".to_string(),
            (ModelKind::Garch11, Some("garch11-var")) => "garch11-var".to_string(),
            (ModelKind::Garch11, Some(other)) => {
                return Err(CliError::config(format!(
                    "model garch11 fixes the recursion; drop `recursion: {other}`"
                )))
            }
            (_, Some(label)) => label.to_string(),
            (kind, None) => {
                return Err(CliError::config(format!(
                    "model {kind:?} needs an explicit `recursion` label (one of {:?})",
                    RecursionMap::BUILTIN_LABELS
                )))
            }
        };

        let params_config = cfg.params.unwrap_or_default();
        let allow_nonstationary = overrides.allow_nonstationary;
        let params = params_config.build(allow_nonstationary)?;

        let recursion = RecursionMap::from_label(&recursion_label, params)?;
        let expected_kind = match model {
            ModelKind::Garch11 | ModelKind::M2Custom => RecursionKind::M2,
            ModelKind::M1Custom => RecursionKind::M1,
        };
        if recursion.kind() != expected_kind {
            return Err(CliError::config(format!(
                "recursion `{recursion_label}` runs in {} coordinates, which does not match model {model:?}",
                recursion.kind()
            )));
        }

        let innovations = cfg
            .innovations
            .clone()
            .unwrap_or_else(InnovationSpec::standard_gaussian);
        innovations.validate()?;

        let init = cfg
            .init
            .unwrap_or(InitialStateSpec::HalfGaussian { scale: 1.0 });
        init.validate()?;

        let seed = overrides.seed.or(cfg.seed).ok_or_else(|| {
            CliError::config("a seed is required (pass --seed or set `seed` in the config)")
        })?;

        let mut seen = std::collections::BTreeSet::new();
        for v in &cfg.variants {
            if v.is_noop() {
                return Err(CliError::config(format!(
                    "variant `{}` does not override anything",
                    v.name
                )));
            }
            if v.name.is_empty() || !seen.insert(v.name.clone()) {
                return Err(CliError::config(format!(
                    "variant names must be unique and non-empty (offender: `{}`)",
                    v.name
                )));
            }
        }

        Ok(ResolvedConfig {
            model,
            recursion_label,
            params_config,
            params,
            innovations,
            init,
            n_steps: cfg.n_steps.unwrap_or(DEFAULT_N_STEPS),
            n_paths: overrides.paths.or(cfg.n_paths).unwrap_or(DEFAULT_N_PATHS),
            seed,
            out_dir: overrides
                .out
                .clone()
                .or_else(|| cfg.outputs.clone())
                .unwrap_or_else(|| PathBuf::from("out")),
            variants: cfg.variants.clone(),
            allow_nonstationary,
        })
    }

    pub fn recursion(&self) -> Result<RecursionMap, CliError> {
        RecursionMap::from_label(&self.recursion_label, self.params).map_err(Into::into)
    }

    pub fn recursion_with(&self, params: GarchParams) -> Result<RecursionMap, CliError> {
        RecursionMap::from_label(&self.recursion_label, params).map_err(Into::into)
    }

    /// Floor for experiments whose outputs are statistical claims.
    pub fn require_statistical_paths(&self) -> Result<(), CliError> {
        if self.n_paths < MIN_STATISTICAL_PATHS {
            return Err(CliError::config(format!(
                "{} paths is below the statistical floor of {MIN_STATISTICAL_PATHS}",
                self.n_paths
            )));
        }
        Ok(())
    }
}
