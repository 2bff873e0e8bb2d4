use serde::{Deserialize, Serialize};

use super::GarchError;

/// Parameter triple (α₀, α₁, β₁) of the GARCH(1,1) variance recursion
/// σ²ₙ₊₁ = α₀ + α₁X²ₙ + β₁σ²ₙ.
///
/// All three weights must be strictly positive. Covariance stationarity
/// requires α₁ + β₁ < 1; `new` enforces it, `new_unchecked` skips it and
/// flags the value so downstream consumers know they are in exploration
/// territory (the simulator still aborts paths whose state blows up).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GarchParams {
    alpha0: f64,
    alpha1: f64,
    beta1: f64,
    #[serde(default)]
    unchecked: bool,
}

impl GarchParams {
    /// Validated constructor: positivity plus the stationarity constraint.
    pub fn new(alpha0: f64, alpha1: f64, beta1: f64) -> Result<Self, GarchError> {
        let p = Self::new_unchecked(alpha0, alpha1, beta1)?;
        if !p.is_stationary() {
            return Err(GarchError::NonStationary {
                alpha1,
                beta1,
            });
        }
        Ok(Self {
            unchecked: false,
            ..p
        })
    }

    /// Positivity-only constructor for deliberate non-stationary exploration.
    /// The returned value carries `is_unchecked() == true`.
    pub fn new_unchecked(alpha0: f64, alpha1: f64, beta1: f64) -> Result<Self, GarchError> {
        for (name, v) in [("alpha0", alpha0), ("alpha1", alpha1), ("beta1", beta1)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(GarchError::NonPositiveParameter {
                    name,
                    value: v,
                });
            }
        }
        Ok(Self {
            alpha0,
            alpha1,
            beta1,
            unchecked: true,
        })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn beta1(&self) -> f64 {
        self.beta1
    }

    pub fn is_stationary(&self) -> bool {
        self.alpha1 + self.beta1 < 1.0
    }

    /// True when the value was built through the unchecked path.
    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }

    /// Long-run variance α₀ / (1 − α₁ − β₁); only meaningful when stationary.
    pub fn unconditional_variance(&self) -> Option<f64> {
        if self.is_stationary() {
            Some(self.alpha0 / (1.0 - self.alpha1 - self.beta1))
        } else {
            None
        }
    }

    /// Copy with a single named weight replaced, revalidated.
    pub fn with_field(&self, field: ParamField, value: f64) -> Result<Self, GarchError> {
        let (a0, a1, b1) = match field {
            ParamField::Alpha0 => (value, self.alpha1, self.beta1),
            ParamField::Alpha1 => (self.alpha0, value, self.beta1),
            ParamField::Beta1 => (self.alpha0, self.alpha1, value),
        };
        if self.unchecked {
            Self::new_unchecked(a0, a1, b1)
        } else {
            Self::new(a0, a1, b1)
        }
    }
}

/// Names the three GARCH(1,1) weights, mostly for sweeps and overrides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamField {
    Alpha0,
    Alpha1,
    Beta1,
}

impl ParamField {
    pub const ALL: [ParamField; 3] = [ParamField::Alpha0, ParamField::Alpha1, ParamField::Beta1];

    pub fn name(&self) -> &'static str {
        match self {
            ParamField::Alpha0 => "alpha0",
            ParamField::Alpha1 => "alpha1",
            ParamField::Beta1 => "beta1",
        }
    }
}

impl std::str::FromStr for ParamField {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha0" => Ok(ParamField::Alpha0),
            "alpha1" => Ok(ParamField::Alpha1),
            "beta1" => Ok(ParamField::Beta1),
            other => Err(format!(
                "unknown parameter `{other}` (expected alpha0, alpha1 or beta1)"
            )),
        }
    }
}
