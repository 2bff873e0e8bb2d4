//! Shared numeric helpers: quantile transforms for the built-in innovation
//! families and compensated summation.
//!
//! Sampling goes through quantile functions on purpose: every draw consumes
//! exactly one uniform, so two processes driven from the same seed stay
//! paired draw-for-draw (common random numbers) no matter which family each
//! one uses.

use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal is always valid")
}

/// Standard normal quantile Φ⁻¹(u).
pub fn normal_quantile(u: f64) -> f64 {
    standard_normal().inverse_cdf(u)
}

/// Standard normal CDF Φ(x).
pub fn normal_cdf(x: f64) -> f64 {
    standard_normal().cdf(x)
}

/// Standard normal density φ(x).
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Quantile of the Student t distribution with `df` degrees of freedom
/// (unit scale, zero location).
pub fn student_t_quantile(u: f64, df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("validated df")
        .inverse_cdf(u)
}

/// Quantile of the standard Laplace distribution (zero mean, unit scale
/// parameter, variance 2).
pub fn laplace_quantile(u: f64) -> f64 {
    // F(x) = 1/2 e^x for x < 0, 1 - 1/2 e^{-x} for x >= 0
    if u < 0.5 {
        (2.0 * u).ln()
    } else {
        -(2.0 * (1.0 - u)).ln()
    }
}

/// Neumaier-compensated sum. The exact suites compare expectations down to
/// 1e-12, which naive accumulation over tens of thousands of atoms can eat.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Running compensated accumulator for building suffix tables.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedAccumulator {
    sum: f64,
    comp: f64,
}

impl CompensatedAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
