use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::math::{compensated_sum, CompensatedAccumulator};

#[derive(Debug, Error)]
pub enum DistError {
    #[error("distribution has no support")]
    Empty,

    #[error("empirical distribution needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("non-finite value {0} in support")]
    NonFinite(f64),

    #[error("negative probability {prob} at point {point}")]
    NegativeProbability { point: f64, prob: f64 },

    #[error("probabilities sum to {0}, expected 1 within 1e-12")]
    ProbabilitySum(f64),

    #[error("moment of order {order} is not finite")]
    NonFiniteMoment { order: u32 },

    #[error("{0}")]
    Invalid(String),
}

/// Common interface over exact finite-support laws and Monte Carlo samples.
/// Everything the order checks consume goes through this trait, so exact
/// oracle output and simulation output are interchangeable.
pub trait Dist: Send + Sync {
    /// Right-continuous CDF P(X ≤ x).
    fn cdf(&self, x: f64) -> f64;

    /// Stop-loss transform E[(X − k)⁺].
    fn stop_loss(&self, k: f64) -> f64;

    /// ∫ₓ^∞ F̄(u)·u du for x ≥ 0, computed from the survival function
    /// directly. For symmetric laws, 4·∫ₓ^∞ F̄(u)·u du = E[(X² − x²)⁺]
    /// because the absolute value doubles the survival on u ≥ 0 and the
    /// substitution u² = t doubles again; the squared-variable stop-loss
    /// route is the independent cross-check.
    fn integrated_survival_weighted(&self, x: f64) -> f64;

    /// Raw moment E[Xᵏ].
    fn raw_moment(&self, order: u32) -> f64;

    /// Lower quantile function, q ∈ [0, 1].
    fn quantile(&self, q: f64) -> f64;

    /// Smallest and largest support point.
    fn support(&self) -> (f64, f64);

    /// `Some(n)` for sample-backed laws, `None` for exact ones.
    fn sample_size(&self) -> Option<usize>;

    /// Support points of an exact law, `None` for samples.
    fn atom_points(&self) -> Option<Vec<f64>>;

    /// Law of |X|.
    fn abs(&self) -> Box<dyn Dist>;

    /// Law of X².
    fn square(&self) -> Box<dyn Dist>;

    fn mean(&self) -> f64 {
        self.raw_moment(1)
    }

    fn variance(&self) -> f64 {
        let m = self.mean();
        self.raw_moment(2) - m * m
    }

    fn is_exact(&self) -> bool {
        self.sample_size().is_none()
    }
}

/// Exact finite-support distribution: sorted atoms with probabilities that
/// sum to one. Duplicate points are merged at construction. Suffix tables
/// make the stop-loss transform and CDF O(log n) per query and keep the
/// accumulation error far below the 1e-12 slack the exact suites assert.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteDist {
    points: Vec<f64>,
    probs: Vec<f64>,
    #[serde(skip)]
    suffix_prob: Vec<f64>,
    #[serde(skip)]
    suffix_weighted: Vec<f64>,
}

impl PartialEq for DiscreteDist {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.probs == other.probs
    }
}

impl DiscreteDist {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self, DistError> {
        if atoms.is_empty() {
            return Err(DistError::Empty);
        }
        let mut atoms = atoms;
        for &(x, p) in &atoms {
            if !x.is_finite() || !p.is_finite() {
                return Err(DistError::NonFinite(if x.is_finite() { p } else { x }));
            }
            if p < 0.0 {
                return Err(DistError::NegativeProbability { point: x, prob: p });
            }
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut points: Vec<f64> = Vec::with_capacity(atoms.len());
        let mut probs: Vec<f64> = Vec::with_capacity(atoms.len());
        for (x, p) in atoms {
            match points.last() {
                Some(&last) if last == x => {
                    *probs.last_mut().unwrap() += p;
                }
                _ => {
                    points.push(x);
                    probs.push(p);
                }
            }
        }
        let total = compensated_sum(probs.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(DistError::ProbabilitySum(total));
        }
        Ok(Self::from_sorted(points, probs))
    }

    fn from_sorted(points: Vec<f64>, probs: Vec<f64>) -> Self {
        let n = points.len();
        let mut suffix_prob = vec![0.0; n + 1];
        let mut suffix_weighted = vec![0.0; n + 1];
        let mut acc_p = CompensatedAccumulator::new();
        let mut acc_w = CompensatedAccumulator::new();
        for i in (0..n).rev() {
            acc_p.add(probs[i]);
            acc_w.add(probs[i] * points[i]);
            suffix_prob[i] = acc_p.value();
            suffix_weighted[i] = acc_w.value();
        }
        Self {
            points,
            probs,
            suffix_prob,
            suffix_weighted,
        }
    }

    /// Degenerate law concentrated at one point.
    pub fn point_mass(x: f64) -> Self {
        Self::new(vec![(x, 1.0)]).expect("point mass is always valid")
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().copied().zip(self.probs.iter().copied())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Law of c·X.
    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.atoms().map(|(x, p)| (c * x, p)).collect())
            .expect("scaling preserves validity")
    }

    /// Law of g(X) for an arbitrary pointwise map (atoms at equal images merge).
    pub fn mapped(&self, g: impl Fn(f64) -> f64) -> Self {
        Self::new(self.atoms().map(|(x, p)| (g(x), p)).collect()).expect("map preserves validity")
    }

    /// Symmetry about zero, up to exact mirror matching of atoms with
    /// probability differences below `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let j = n - 1 - i;
            (self.points[i] + self.points[j]).abs() <= tol
                && (self.probs[i] - self.probs[j]).abs() <= tol
        })
    }

    fn first_above(&self, x: f64) -> usize {
        self.points.partition_point(|&p| p <= x)
    }
}

impl Dist for DiscreteDist {
    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.suffix_prob[self.first_above(x)]
    }

    fn stop_loss(&self, k: f64) -> f64 {
        let i = self.first_above(k);
        (self.suffix_weighted[i] - k * self.suffix_prob[i]).max(0.0)
    }

    fn integrated_survival_weighted(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0, "defined for x >= 0");
        // piecewise-constant survival: integrate F̄(u)·u segment by segment
        let mut total = CompensatedAccumulator::new();
        if x < self.points[0] {
            total.add((self.points[0] * self.points[0] - x * x) / 2.0);
        }
        for j in 0..self.len().saturating_sub(1) {
            let a = self.points[j].max(x);
            let b = self.points[j + 1];
            if b > a {
                let survival = self.suffix_prob[j + 1];
                total.add(survival * (b * b - a * a) / 2.0);
            }
        }
        total.value()
    }

    fn raw_moment(&self, order: u32) -> f64 {
        compensated_sum(self.atoms().map(|(x, p)| p * x.powi(order as i32)))
    }

    fn quantile(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        let mut cum = 0.0;
        for (x, p) in self.atoms() {
            cum += p;
            if cum >= q {
                return x;
            }
        }
        *self.points.last().unwrap()
    }

    fn support(&self) -> (f64, f64) {
        (self.points[0], *self.points.last().unwrap())
    }

    fn sample_size(&self) -> Option<usize> {
        None
    }

    fn atom_points(&self) -> Option<Vec<f64>> {
        Some(self.points.clone())
    }

    fn abs(&self) -> Box<dyn Dist> {
        Box::new(self.mapped(f64::abs))
    }

    fn square(&self) -> Box<dyn Dist> {
        Box::new(self.mapped(|x| x * x))
    }
}

/// Sorted Monte Carlo sample with the usual empirical CDF. Suffix sums of
/// values and squared values make stop-loss and survival-integral queries
/// O(log n).
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDist {
    sample: Vec<f64>,
    suffix_sum: Vec<f64>,
    suffix_sq_sum: Vec<f64>,
}

impl EmpiricalDist {
    pub fn new(mut sample: Vec<f64>) -> Result<Self, DistError> {
        if sample.len() < 2 {
            return Err(DistError::TooFewSamples(sample.len()));
        }
        if let Some(&bad) = sample.iter().find(|v| !v.is_finite()) {
            return Err(DistError::NonFinite(bad));
        }
        sample.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let n = sample.len();
        let mut suffix_sum = vec![0.0; n + 1];
        let mut suffix_sq_sum = vec![0.0; n + 1];
        let mut acc = CompensatedAccumulator::new();
        let mut acc_sq = CompensatedAccumulator::new();
        for i in (0..n).rev() {
            acc.add(sample[i]);
            acc_sq.add(sample[i] * sample[i]);
            suffix_sum[i] = acc.value();
            suffix_sq_sum[i] = acc_sq.value();
        }
        Ok(Self {
            sample,
            suffix_sum,
            suffix_sq_sum,
        })
    }

    pub fn n(&self) -> usize {
        self.sample.len()
    }

    pub fn sample(&self) -> &[f64] {
        &self.sample
    }

    /// Standard error of the sample mean.
    pub fn se_mean(&self) -> f64 {
        (self.variance() / self.n() as f64).sqrt()
    }

    /// Standard error of the sample variance, √((m₄ − m₂²)/n) around the mean.
    pub fn se_variance(&self) -> f64 {
        let mean = self.mean();
        let n = self.n() as f64;
        let m2 = compensated_sum(self.sample.iter().map(|&x| (x - mean).powi(2))) / n;
        let m4 = compensated_sum(self.sample.iter().map(|&x| (x - mean).powi(4))) / n;
        ((m4 - m2 * m2).max(0.0) / n).sqrt()
    }

    fn first_above(&self, x: f64) -> usize {
        self.sample.partition_point(|&s| s <= x)
    }
}

impl Dist for EmpiricalDist {
    fn cdf(&self, x: f64) -> f64 {
        self.first_above(x) as f64 / self.n() as f64
    }

    fn stop_loss(&self, k: f64) -> f64 {
        let i = self.first_above(k);
        let above = (self.n() - i) as f64;
        ((self.suffix_sum[i] - k * above) / self.n() as f64).max(0.0)
    }

    fn integrated_survival_weighted(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0, "defined for x >= 0");
        let i = self.first_above(x);
        let above = (self.n() - i) as f64;
        (self.suffix_sq_sum[i] - x * x * above) / (2.0 * self.n() as f64)
    }

    fn raw_moment(&self, order: u32) -> f64 {
        compensated_sum(self.sample.iter().map(|&x| x.powi(order as i32))) / self.n() as f64
    }

    fn quantile(&self, q: f64) -> f64 {
        let n = self.n();
        let idx = ((q.clamp(0.0, 1.0) * n as f64).ceil() as usize)
            .saturating_sub(1)
            .min(n - 1);
        self.sample[idx]
    }

    fn support(&self) -> (f64, f64) {
        (self.sample[0], *self.sample.last().unwrap())
    }

    fn sample_size(&self) -> Option<usize> {
        Some(self.n())
    }

    fn atom_points(&self) -> Option<Vec<f64>> {
        None
    }

    fn abs(&self) -> Box<dyn Dist> {
        Box::new(
            Self::new(self.sample.iter().map(|&x| x.abs()).collect())
                .expect("abs preserves validity"),
        )
    }

    fn square(&self) -> Box<dyn Dist> {
        Box::new(
            Self::new(self.sample.iter().map(|&x| x * x).collect())
                .expect("square preserves validity"),
        )
    }
}
