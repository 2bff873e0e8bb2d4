use super::dist::{Dist, DistError};
use super::grid::{comparison_grid, GridSpec};
use super::verdict::{EvidenceCurve, OrderVerdict, Relation};

/// Default comparison band: exact inputs are held to 1e-12, sample-backed
/// inputs to a DKW-flavoured 3·√(ln n / n) with n the smaller sample.
pub fn default_tolerance(a: &dyn Dist, b: &dyn Dist) -> f64 {
    match (a.sample_size(), b.sample_size()) {
        (None, None) => 1e-12,
        (na, nb) => {
            let n = na.unwrap_or(usize::MAX).min(nb.unwrap_or(usize::MAX)) as f64;
            3.0 * ((n.ln()) / n).sqrt()
        }
    }
}

/// Default band for mean equality in convex-order checks: 1e-12 for exact
/// pairs, four pooled standard errors otherwise.
pub fn default_mean_tolerance(a: &dyn Dist, b: &dyn Dist) -> f64 {
    if a.is_exact() && b.is_exact() {
        1e-12
    } else {
        let se_sq = |d: &dyn Dist| {
            d.sample_size()
                .map(|n| d.variance() / n as f64)
                .unwrap_or(0.0)
        };
        4.0 * (se_sq(a) + se_sq(b)).sqrt()
    }
}

/// Usual stochastic order: A ⪯st B iff F_A(x) ≥ F_B(x) − tol on the whole
/// grid. Evidence carries both CDF curves.
pub fn check_st(a: &dyn Dist, b: &dyn Dist, grid_spec: &GridSpec, tol: f64) -> OrderVerdict {
    let grid = comparison_grid(a, b, grid_spec);
    let cdf_a: Vec<f64> = grid.iter().map(|&x| a.cdf(x)).collect();
    let cdf_b: Vec<f64> = grid.iter().map(|&x| b.cdf(x)).collect();
    let gaps: Vec<f64> = cdf_a.iter().zip(&cdf_b).map(|(fa, fb)| fa - fb).collect();
    OrderVerdict::from_gaps(Relation::St, grid, &gaps, tol)
        .with_evidence(EvidenceCurve::new("cdf", cdf_a, cdf_b))
}

/// Increasing convex order: A ⪯icx B iff the stop-loss curve of A stays
/// below the one of B within tol at every grid threshold.
pub fn check_icx(a: &dyn Dist, b: &dyn Dist, grid_spec: &GridSpec, tol: f64) -> OrderVerdict {
    let grid = comparison_grid(a, b, grid_spec);
    let sl_a: Vec<f64> = grid.iter().map(|&k| a.stop_loss(k)).collect();
    let sl_b: Vec<f64> = grid.iter().map(|&k| b.stop_loss(k)).collect();
    let gaps: Vec<f64> = sl_a.iter().zip(&sl_b).map(|(sa, sb)| sb - sa).collect();
    OrderVerdict::from_gaps(Relation::Icx, grid, &gaps, tol)
        .with_evidence(EvidenceCurve::new("stop_loss", sl_a, sl_b))
}

/// Convex order: increasing convex order plus mean equality within
/// `mean_tol`. A mean gap beyond the band makes the pair incomparable no
/// matter what the stop-loss curves say.
pub fn check_cx(
    a: &dyn Dist,
    b: &dyn Dist,
    mean_tol: f64,
    grid_spec: &GridSpec,
    tol: f64,
) -> OrderVerdict {
    let mean_a = a.mean();
    let mean_b = b.mean();
    let mut v = check_icx(a, b, grid_spec, tol);
    v.relation = Relation::Cx;
    v = v
        .with_note(format!("mean_a = {mean_a}"))
        .with_note(format!("mean_b = {mean_b}"))
        .with_note(format!("mean_tolerance = {mean_tol}"));
    if (mean_a - mean_b).abs() > mean_tol {
        v.direction = super::verdict::Direction::Incomparable;
        v = v.with_note(format!(
            "means differ by {} > {mean_tol}: convex order cannot hold",
            (mean_a - mean_b).abs()
        ));
    }
    v
}

/// Peakedness: the usual stochastic order between |A| and |B|. For
/// symmetric laws this is equivalent to the squared-variable st-order and
/// to a single CDF crossing with sign pattern (+, −); both equivalent
/// formulations are recorded as evidence.
pub fn check_peakedness(a: &dyn Dist, b: &dyn Dist, tol: f64) -> OrderVerdict {
    let grid_spec = GridSpec::default();
    let abs_a = a.abs();
    let abs_b = b.abs();
    let mut v = check_st(abs_a.as_ref(), abs_b.as_ref(), &grid_spec, tol);
    v.relation = Relation::Peak;
    if let Some(curve) = v.evidence.first_mut() {
        curve.name = "cdf_abs".to_string();
    }

    let sq = check_st(a.square().as_ref(), b.square().as_ref(), &grid_spec, tol);
    v = v.with_note(format!("squared_st_direction = {:?}", sq.direction));

    let cut = sign_changes(a, b, &grid_spec, tol);
    v = v.with_note(format!(
        "signed_cdf_crossings = {} sequence {:?}",
        cut.count, cut.signs
    ));

    // contract warning: the equivalences assume symmetry about zero
    for (name, d) in [("A", a), ("B", b)] {
        if let Some(n) = d.sample_size() {
            let se = (d.variance() / n as f64).sqrt();
            if d.mean().abs() > 4.0 * se {
                v = v.with_note(format!(
                    "warning: {name} looks asymmetric (|mean| = {} > 4 se = {})",
                    d.mean().abs(),
                    4.0 * se
                ));
            }
        }
    }
    v
}

/// Sign pattern of G − F (CDF of B minus CDF of A) across the grid after
/// collapsing runs and treating |gap| ≤ tol as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignChangeSummary {
    pub count: usize,
    pub signs: Vec<i8>,
}

pub fn sign_changes(
    a: &dyn Dist,
    b: &dyn Dist,
    grid_spec: &GridSpec,
    tol: f64,
) -> SignChangeSummary {
    let grid = comparison_grid(a, b, grid_spec);
    let gaps = grid.iter().map(|&x| b.cdf(x) - a.cdf(x));
    collapse_signs(gaps, tol)
}

/// Collapse a gap sequence to its nonzero sign runs.
pub(crate) fn collapse_signs(gaps: impl IntoIterator<Item = f64>, tol: f64) -> SignChangeSummary {
    let mut signs: Vec<i8> = Vec::new();
    for g in gaps {
        let s = if g > tol {
            1
        } else if g < -tol {
            -1
        } else {
            0
        };
        if s != 0 && signs.last() != Some(&s) {
            signs.push(s);
        }
    }
    SignChangeSummary {
        count: signs.len().saturating_sub(1),
        signs,
    }
}

/// Pearson-style kurtosis ratio E[X⁴]/E[X²]²; equals E[X⁴] for laws with
/// unit second moment.
pub fn kurtosis_beta2(d: &dyn Dist) -> Result<f64, DistError> {
    let m2 = d.raw_moment(2);
    let m4 = d.raw_moment(4);
    if !m4.is_finite() {
        return Err(DistError::NonFiniteMoment { order: 4 });
    }
    if !m2.is_finite() || m2 <= 0.0 {
        return Err(DistError::NonFiniteMoment { order: 2 });
    }
    Ok(m4 / (m2 * m2))
}

/// ∫ₓ^∞ F̄(u)·u du, the survival-weighted tail integral of a symmetric law.
pub fn integrated_survival_weighted(d: &dyn Dist, x: f64) -> f64 {
    assert!(x >= 0.0, "integrated_survival_weighted requires x >= 0");
    d.integrated_survival_weighted(x)
}
