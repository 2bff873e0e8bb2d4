//! Gaussian kernel density estimation and the density-crossing diagnostic.
//!
//! Crossing counts from smoothed densities depend on the bandwidth, so the
//! diagnostic is advisory: it never feeds a pass/fail gate, it just makes
//! the four-crossing kurtosis picture visible.

use serde::{Deserialize, Serialize};

use super::dist::{Dist, DistError, EmpiricalDist};
use super::grid::GridSpec;
use crate::math::normal_pdf;

/// Bandwidth selection for kernel density estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthSpec {
    /// Silverman's rule of thumb on the pooled sample.
    Silverman,
    /// Fixed bandwidth.
    Fixed(f64),
}

/// Silverman's rule: 0.9·min(sd, IQR/1.34)·n^(−1/5).
pub fn silverman_bandwidth(sample: &[f64]) -> f64 {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let sd = (sample.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
    let mut sorted = sample.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| sorted[((p * n).ceil() as usize).saturating_sub(1).min(sorted.len() - 1)];
    let iqr = q(0.75) - q(0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    0.9 * spread * n.powf(-0.2)
}

/// A smoothed density curve on an even grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
}

/// Gaussian KDE of `sample` on an even grid covering `range`.
///
/// Samples are linearly binned onto an internal grid at least eight times
/// finer than the bandwidth before the kernel sum, which makes the cost
/// independent of the sample size at a binning error far below the
/// smoothing error. Samples outside `range` fold into the edge bins.
pub fn kernel_density(
    sample: &[f64],
    bandwidth: f64,
    range: (f64, f64),
    points: usize,
) -> DensityCurve {
    assert!(points >= 2 && bandwidth > 0.0);
    let (lo, hi) = range;
    assert!(hi > lo);
    let step = (hi - lo) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();

    let bins = (((hi - lo) / bandwidth * 8.0).ceil() as usize).clamp(2048, 65_536);
    let bin_step = (hi - lo) / (bins - 1) as f64;
    let mut weights = vec![0.0f64; bins];
    for &x in sample {
        let pos = ((x - lo) / bin_step).clamp(0.0, (bins - 1) as f64);
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        weights[i] += 1.0 - frac;
        if i + 1 < bins {
            weights[i + 1] += frac;
        }
    }

    let n = sample.len() as f64;
    // the kernel is negligible past eight bandwidths
    let reach = (8.0 * bandwidth / bin_step).ceil() as usize;
    let density = grid
        .iter()
        .map(|&x| {
            let center = ((x - lo) / bin_step).round() as isize;
            let first = (center - reach as isize).max(0) as usize;
            let last = ((center + reach as isize) as usize).min(bins - 1);
            let mut s = 0.0;
            for (b, &w) in weights.iter().enumerate().take(last + 1).skip(first) {
                if w > 0.0 {
                    let c = lo + b as f64 * bin_step;
                    s += w * normal_pdf((x - c) / bandwidth);
                }
            }
            s / (n * bandwidth)
        })
        .collect();
    DensityCurve {
        grid,
        density,
        bandwidth,
    }
}

/// Result of the advisory density-crossing diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCrossings {
    pub count: usize,
    pub locations: Vec<f64>,
    pub bandwidth: f64,
    /// Always true: bandwidth-sensitive, not part of any acceptance gate.
    pub advisory: bool,
}

/// Count the crossings of the smoothed densities of two samples.
///
/// Both samples are smoothed with one common bandwidth so the curves are
/// comparable. Gaps inside a local noise band (four standard deviations of
/// the kernel estimator) count as ties, and regions where both densities
/// are negligible relative to the peak are ignored.
pub fn density_crossings(
    a: &EmpiricalDist,
    b: &EmpiricalDist,
    bandwidth: BandwidthSpec,
    grid_spec: &GridSpec,
) -> Result<DensityCrossings, DistError> {
    const MIN_SAMPLES: usize = 1000;
    for (name, d) in [("a", a), ("b", b)] {
        if d.n() < MIN_SAMPLES {
            return Err(DistError::Invalid(format!(
                "sample {name} has {} points; density crossings need at least {MIN_SAMPLES} (1e4+ recommended)",
                d.n()
            )));
        }
    }
    let mut pooled: Vec<f64> = a.sample().to_vec();
    pooled.extend_from_slice(b.sample());
    let h = match bandwidth {
        BandwidthSpec::Silverman => silverman_bandwidth(&pooled),
        BandwidthSpec::Fixed(h) => h,
    };
    if h <= 0.0 || h.is_nan() {
        return Err(DistError::Invalid(format!("bad bandwidth {h}")));
    }

    let lo = a.support().0.min(b.support().0) - 3.0 * h;
    let hi = a.support().1.max(b.support().1) + 3.0 * h;
    let points = grid_spec.points.max(64);
    let fa = kernel_density(a.sample(), h, (lo, hi), points);
    let fb = kernel_density(b.sample(), h, (lo, hi), points);

    let peak = fa
        .density
        .iter()
        .chain(fb.density.iter())
        .cloned()
        .fold(0.0, f64::max);
    let floor = 1e-3 * peak;
    // variance of a Gaussian-kernel KDE value ≈ f·R(K)/(n·h), R(K) = 1/(2√π)
    let kernel_l2 = 0.5 / std::f64::consts::PI.sqrt();
    let n_eff = a.n().min(b.n()) as f64;

    // runs of one sign: (sign, first grid index, last grid index)
    let mut runs: Vec<(i8, usize, usize)> = Vec::new();
    for i in 0..points {
        let (da, db) = (fa.density[i], fb.density[i]);
        if da.max(db) < floor {
            continue;
        }
        let noise = 4.0 * (da.max(db) * kernel_l2 / (n_eff * h)).sqrt();
        let gap = db - da;
        let s = if gap > noise {
            1
        } else if gap < -noise {
            -1
        } else {
            0
        };
        if s == 0 {
            continue;
        }
        match runs.last_mut() {
            Some((last, _, end)) if *last == s => *end = i,
            _ => runs.push((s, i, i)),
        }
    }

    // a crossing sits between the end of one run and the start of the next
    let locations: Vec<f64> = runs
        .windows(2)
        .map(|w| 0.5 * (fa.grid[w[0].2] + fa.grid[w[1].1]))
        .collect();
    Ok(DensityCrossings {
        count: runs.len().saturating_sub(1),
        locations,
        bandwidth: h,
        advisory: true,
    })
}
