//! Volatility recursions and path simulation.
//!
//! Two general model shapes are supported, distinguished by the coordinates
//! the recursion runs in: volatility updates σₙ₊₁ = f(|εₙ|, σₙ) and variance
//! updates σ²ₙ₊₁ = f(ε²ₙ, σ²ₙ), both with logreturns Xₙ = σₙ·εₙ and the
//! innovation εₙ independent of the current state. The classical GARCH(1,1)
//! recursion σ²ₙ₊₁ = α₀ + α₁X²ₙ + β₁σ²ₙ is a special case of both and also
//! admits a closed-form solution, which doubles as a test oracle.

mod innovations;
mod params;
mod recursion;
mod simulate;

pub use innovations::{InnovationFamily, InnovationSpec};
pub use params::{GarchParams, ParamField};
pub use recursion::{RecursionKind, RecursionMap};
pub use simulate::{closed_form_variance, compose_g, logreturn_sums, simulate_paths, PathBatch};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GarchError {
    #[error("parameter {name} must be a positive finite real, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("alpha1 + beta1 = {} >= 1 breaks covariance stationarity (use the unchecked constructor to explore anyway)", alpha1 + beta1)]
    NonStationary { alpha1: f64, beta1: f64 },

    #[error("invalid innovation spec: {0}")]
    InvalidInnovation(String),

    #[error("unknown recursion label `{0}`")]
    UnknownRecursion(String),

    #[error("recursion `{label}` violates {property} along the {axis} axis (worst difference {worst:e})")]
    ShapeViolation {
        label: String,
        axis: &'static str,
        property: &'static str,
        worst: f64,
    },

    #[error("invalid simulation request: {0}")]
    InvalidSimulation(String),

    #[error("path {path} diverged at step {step}: state = {state}")]
    Divergence { path: usize, step: usize, state: f64 },
}

/// How the initial state (σ₀ in volatility coordinates, σ₀² in variance
/// coordinates) is produced. Whatever the mode, the realized value is
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialStateSpec {
    /// A fixed positive starting state.
    Constant(f64),
    /// |scale · Z| with Z standard normal: the absolute value keeps the
    /// state positive where a raw Gaussian draw could not.
    HalfGaussian { scale: f64 },
}

impl InitialStateSpec {
    pub fn constant(value: f64) -> Result<Self, GarchError> {
        if value <= 0.0 || !value.is_finite() {
            return Err(GarchError::InvalidSimulation(format!(
                "initial state must be a positive finite real, got {value}"
            )));
        }
        Ok(InitialStateSpec::Constant(value))
    }

    pub fn half_gaussian(scale: f64) -> Result<Self, GarchError> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(GarchError::InvalidSimulation(format!(
                "half-Gaussian scale must be a positive finite real, got {scale}"
            )));
        }
        Ok(InitialStateSpec::HalfGaussian { scale })
    }

    pub fn validate(&self) -> Result<(), GarchError> {
        match *self {
            InitialStateSpec::Constant(v) => Self::constant(v).map(|_| ()),
            InitialStateSpec::HalfGaussian { scale } => Self::half_gaussian(scale).map(|_| ()),
        }
    }

    /// Draw one initial state; consumes one uniform in the half-Gaussian
    /// mode and none in the constant mode.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            InitialStateSpec::Constant(v) => v,
            InitialStateSpec::HalfGaussian { scale } => {
                let z = crate::math::normal_quantile(rng.random::<f64>().max(f64::MIN_POSITIVE));
                // the median draw maps to exactly zero; nudge it positive
                (scale * z).abs().max(f64::MIN_POSITIVE)
            }
        }
    }
}
