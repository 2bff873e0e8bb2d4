use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GarchError, GarchParams};

/// Coordinate system of a volatility recursion.
///
/// `M1` updates the volatility itself, σₙ₊₁ = f(|εₙ|, σₙ); `M2` updates the
/// variance, σ²ₙ₊₁ = f(ε²ₙ, σ²ₙ). Either way `f` must be increasing and
/// convex in each argument separately, which is the property the order
/// propagation results lean on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionKind {
    /// Volatility coordinates: state is σ, driver is |ε|.
    M1,
    /// Variance coordinates: state is σ², driver is ε².
    M2,
}

impl fmt::Display for RecursionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecursionKind::M1 => write!(f, "m1"),
            RecursionKind::M2 => write!(f, "m2"),
        }
    }
}

type UpdateFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// An update map (driver, state) → next state together with its coordinate
/// system. Cheap to clone and safe to share across simulation threads.
#[derive(Clone)]
pub struct RecursionMap {
    kind: RecursionKind,
    label: String,
    f: UpdateFn,
}

impl fmt::Debug for RecursionMap {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("RecursionMap")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl RecursionMap {
    /// GARCH(1,1) in its native variance coordinates:
    /// f(e², s²) = α₀ + α₁·e²·s² + β₁·s².
    pub fn garch11(params: GarchParams) -> Self {
        Self {
            kind: RecursionKind::M2,
            label: "garch11-var".to_string(),
            f: Arc::new(move |u_sq, s_sq| {
                params.alpha0() + params.alpha1() * u_sq * s_sq + params.beta1() * s_sq
            }),
        }
    }

    /// GARCH(1,1) rewritten in volatility coordinates:
    /// f(u, σ) = √(α₀ + α₁·σ²·u² + β₁·σ²). Same law as `garch11`, but the
    /// state carried along paths is σ instead of σ².
    pub fn garch11_volatility(params: GarchParams) -> Self {
        Self {
            kind: RecursionKind::M1,
            label: "garch11-vol".to_string(),
            f: Arc::new(move |u, s| {
                (params.alpha0() + params.alpha1() * s * s * u * u + params.beta1() * s * s).sqrt()
            }),
        }
    }

    /// Absolute-value recursion in volatility coordinates:
    /// σₙ₊₁ = α₀ + α₁·|εₙ|·σₙ + β₁·σₙ. Linear in each argument, hence
    /// trivially increasing and componentwise convex.
    pub fn absolute_value(params: GarchParams) -> Self {
        Self {
            kind: RecursionKind::M1,
            label: "avgarch-vol".to_string(),
            f: Arc::new(move |u, s| {
                params.alpha0() + params.alpha1() * u * s + params.beta1() * s
            }),
        }
    }

    /// Look a builtin map up by its label.
    pub fn from_label(label: &str, params: GarchParams) -> Result<Self, GarchError> {
        match label {
            "garch11-var" => Ok(Self::garch11(params)),
            "garch11-vol" => Ok(Self::garch11_volatility(params)),
            "avgarch-vol" => Ok(Self::absolute_value(params)),
            other => Err(GarchError::UnknownRecursion(other.to_string())),
        }
    }

    pub const BUILTIN_LABELS: [&'static str; 3] = ["garch11-var", "garch11-vol", "avgarch-vol"];

    /// Wrap a user-supplied update map after checking monotonicity and
    /// componentwise convexity numerically on `[0, u_max] × (0, s_max]`.
    pub fn custom<F>(
        kind: RecursionKind,
        label: impl Into<String>,
        f: F,
        u_max: f64,
        s_max: f64,
    ) -> Result<Self, GarchError>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let map = Self {
            kind,
            label: label.into(),
            f: Arc::new(f),
        };
        map.validate_shape(u_max, s_max)?;
        Ok(map)
    }

    pub fn kind(&self) -> RecursionKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// One update step in the map's native coordinates.
    pub fn step(&self, driver: f64, state: f64) -> f64 {
        (self.f)(driver, state)
    }

    /// Grid check of the shape invariants: forward differences in each
    /// argument ≥ −1e-9 (increasing) and second differences in each argument
    /// ≥ −1e-9 (componentwise convex). 64 points per axis.
    pub fn validate_shape(&self, u_max: f64, s_max: f64) -> Result<(), GarchError> {
        const POINTS: usize = 64;
        const TOL: f64 = 1e-9;
        if !(u_max > 0.0 && s_max > 0.0) {
            return Err(GarchError::InvalidInnovation(
                "shape-check ranges must be positive".into(),
            ));
        }
        let axis = |max: f64, positive_floor: f64| -> Vec<f64> {
            (0..POINTS)
                .map(|i| positive_floor + (max - positive_floor) * i as f64 / (POINTS - 1) as f64)
                .collect()
        };
        let us = axis(u_max, 0.0);
        let ss = axis(s_max, s_max / POINTS as f64);

        let check = |values: Vec<f64>, axis_name: &'static str| -> Result<(), GarchError> {
            for w in values.windows(2) {
                if w[1] - w[0] < -TOL {
                    return Err(GarchError::ShapeViolation {
                        label: self.label.clone(),
                        axis: axis_name,
                        property: "monotonicity",
                        worst: w[1] - w[0],
                    });
                }
            }
            for w in values.windows(3) {
                let second = w[2] - 2.0 * w[1] + w[0];
                if second < -TOL {
                    return Err(GarchError::ShapeViolation {
                        label: self.label.clone(),
                        axis: axis_name,
                        property: "componentwise convexity",
                        worst: second,
                    });
                }
            }
            Ok(())
        };

        for &s in &ss {
            check(us.iter().map(|&u| self.step(u, s)).collect(), "driver")?;
        }
        for &u in &us {
            check(ss.iter().map(|&s| self.step(u, s)).collect(), "state")?;
        }
        Ok(())
    }
}
