use rand::Rng;
use serde::{Deserialize, Serialize};

use super::GarchError;
use crate::math;
use crate::orders::DiscreteDist;

/// The supported symmetric innovation families. Every family has mean
/// exactly zero and is symmetric about it by construction, which is what the
/// convex-order machinery downstream relies on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InnovationFamily {
    Gaussian,
    /// Student t with `df > 4` so fourth moments stay finite for the
    /// kurtosis comparisons.
    StudentT { df: f64 },
    Laplace,
    /// Finite symmetric support given as `(point, probability)` pairs.
    DiscreteSymmetric { support: Vec<(f64, f64)> },
}

/// A concrete innovation law: a family, a scale factor, and an optional
/// rescaling of the base family to unit variance before the scale applies.
///
/// With `normalized = true` and `scale = 1` the law has second moment
/// exactly 1; with `normalized = false` the family's natural variance is
/// kept (t: df/(df−2), Laplace: 2, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnovationSpec {
    #[serde(flatten)]
    family: InnovationFamily,
    scale: f64,
    normalized: bool,
}

impl InnovationSpec {
    pub fn new(family: InnovationFamily, scale: f64, normalized: bool) -> Result<Self, GarchError> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(GarchError::InvalidInnovation(format!(
                "scale must be a positive finite real, got {scale}"
            )));
        }
        match &family {
            InnovationFamily::StudentT { df } => {
                if *df <= 4.0 || !df.is_finite() {
                    return Err(GarchError::InvalidInnovation(format!(
                        "Student t requires df > 4, got {df}"
                    )));
                }
            }
            InnovationFamily::DiscreteSymmetric { support } => {
                validate_symmetric_support(support)?;
                if normalized && support.iter().all(|&(x, p)| x == 0.0 || p == 0.0) {
                    return Err(GarchError::InvalidInnovation(
                        "cannot normalize a law with zero variance".into(),
                    ));
                }
            }
            InnovationFamily::Gaussian | InnovationFamily::Laplace => {}
        }
        Ok(Self {
            family,
            scale,
            normalized,
        })
    }

    /// Unit-variance Gaussian innovations, the default in most experiments.
    pub fn standard_gaussian() -> Self {
        Self::new(InnovationFamily::Gaussian, 1.0, true).expect("valid by construction")
    }

    /// Re-run the constructor checks, for specs built by deserialization.
    pub fn validate(&self) -> Result<(), GarchError> {
        Self::new(self.family.clone(), self.scale, self.normalized).map(|_| ())
    }

    /// Unit-variance Student t innovations.
    pub fn student_t(df: f64) -> Result<Self, GarchError> {
        Self::new(InnovationFamily::StudentT { df }, 1.0, true)
    }

    /// The two-point law ±`magnitude` with probability 1/2 each.
    pub fn two_point(magnitude: f64) -> Result<Self, GarchError> {
        Self::new(
            InnovationFamily::DiscreteSymmetric {
                support: vec![(-magnitude, 0.5), (magnitude, 0.5)],
            },
            1.0,
            false,
        )
    }

    pub fn family(&self) -> &InnovationFamily {
        &self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Factor applied to a base-family draw: normalization then scale.
    fn draw_factor(&self) -> f64 {
        let norm = if self.normalized {
            1.0 / self.base_variance().sqrt()
        } else {
            1.0
        };
        self.scale * norm
    }

    fn base_variance(&self) -> f64 {
        match &self.family {
            InnovationFamily::Gaussian => 1.0,
            InnovationFamily::StudentT { df } => df / (df - 2.0),
            InnovationFamily::Laplace => 2.0,
            InnovationFamily::DiscreteSymmetric { support } => {
                math::compensated_sum(support.iter().map(|&(x, p)| p * x * x))
            }
        }
    }

    fn base_fourth_moment(&self) -> f64 {
        match &self.family {
            InnovationFamily::Gaussian => 3.0,
            InnovationFamily::StudentT { df } => 3.0 * df * df / ((df - 2.0) * (df - 4.0)),
            InnovationFamily::Laplace => 24.0,
            InnovationFamily::DiscreteSymmetric { support } => {
                math::compensated_sum(support.iter().map(|&(x, p)| p * x.powi(4)))
            }
        }
    }

    /// Mean of the law; exactly zero for every supported family.
    pub fn mean(&self) -> f64 {
        0.0
    }

    /// Exact second moment E[ε²] of the scaled law.
    pub fn variance(&self) -> f64 {
        let f = self.draw_factor();
        f * f * self.base_variance()
    }

    /// Exact fourth moment E[ε⁴] of the scaled law.
    pub fn fourth_moment(&self) -> f64 {
        self.draw_factor().powi(4) * self.base_fourth_moment()
    }

    /// Pearson kurtosis β₂ = E[ε⁴]/E[ε²]²; invariant under scaling.
    pub fn kurtosis(&self) -> f64 {
        self.base_fourth_moment() / self.base_variance().powi(2)
    }

    /// Quantile of the scaled law. `u` is clamped away from 0 so the
    /// continuous families never return −∞.
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(f64::MIN_POSITIVE, 1.0);
        let base = match &self.family {
            InnovationFamily::Gaussian => math::normal_quantile(u),
            InnovationFamily::StudentT { df } => math::student_t_quantile(u, *df),
            InnovationFamily::Laplace => math::laplace_quantile(u),
            InnovationFamily::DiscreteSymmetric { support } => {
                let mut cum = 0.0;
                let mut value = support.last().map(|&(x, _)| x).unwrap_or(0.0);
                for &(x, p) in support {
                    cum += p;
                    if cum >= u {
                        value = x;
                        break;
                    }
                }
                value
            }
        };
        base * self.draw_factor()
    }

    /// One draw through the quantile transform (one uniform consumed).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// The scaled law as an exact finite-support distribution, when the
    /// family is discrete.
    pub fn as_discrete(&self) -> Option<DiscreteDist> {
        match &self.family {
            InnovationFamily::DiscreteSymmetric { support } => {
                let f = self.draw_factor();
                let atoms: Vec<(f64, f64)> = support.iter().map(|&(x, p)| (x * f, p)).collect();
                Some(DiscreteDist::new(atoms).expect("validated support"))
            }
            _ => None,
        }
    }

    /// Human-readable label for reports.
    pub fn label(&self) -> String {
        let fam = match &self.family {
            InnovationFamily::Gaussian => "gaussian".to_string(),
            InnovationFamily::StudentT { df } => format!("student_t(df={df})"),
            InnovationFamily::Laplace => "laplace".to_string(),
            InnovationFamily::DiscreteSymmetric { support } => {
                format!("discrete({} atoms)", support.len())
            }
        };
        format!(
            "{fam} scale={} normalized={}",
            self.scale, self.normalized
        )
    }
}

fn validate_symmetric_support(support: &[(f64, f64)]) -> Result<(), GarchError> {
    if support.is_empty() {
        return Err(GarchError::InvalidInnovation(
            "discrete support must not be empty".into(),
        ));
    }
    let mut total = 0.0;
    for &(x, p) in support {
        if !x.is_finite() {
            return Err(GarchError::InvalidInnovation(format!(
                "non-finite support point {x}"
            )));
        }
        if p < 0.0 || p.is_nan() {
            return Err(GarchError::InvalidInnovation(format!(
                "negative probability {p} at point {x}"
            )));
        }
        total += p;
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(GarchError::InvalidInnovation(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    // every atom must have a mirror with the same probability
    for &(x, p) in support {
        let mirror = support
            .iter()
            .find(|&&(y, _)| y == -x)
            .map(|&(_, q)| q)
            .ok_or_else(|| {
                GarchError::InvalidInnovation(format!("support is missing the mirror of {x}"))
            })?;
        if (mirror - p).abs() > 1e-12 {
            return Err(GarchError::InvalidInnovation(format!(
                "asymmetric probabilities at ±{x}: {p} vs {mirror}"
            )));
        }
    }
    // distinct points
    let mut points: Vec<f64> = support.iter().map(|&(x, _)| x).collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if points.windows(2).any(|w| w[0] == w[1]) {
        return Err(GarchError::InvalidInnovation(
            "support points must be distinct".into(),
        ));
    }
    Ok(())
}
