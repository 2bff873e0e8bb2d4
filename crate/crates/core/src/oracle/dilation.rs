use crate::orders::{check_cx, Direction, Dist, DiscreteDist, GridSpec};

use super::OracleError;

/// A symmetric base law together with a mean-preserving spread of it, with
/// the convex-order premise verified exactly at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationPair {
    pub base: DiscreteDist,
    pub dilated: DiscreteDist,
}

/// Martingale dilation of an arbitrary law: X·Y with Y ∈ {1−s, 1+s}
/// equiprobable and independent of X. Conditionally on X the mean is
/// unchanged, so the output is cx-above the input; that premise is still
/// re-verified exactly on the union support before returning.
pub(crate) fn dilate_law(base: &DiscreteDist, spread: f64) -> Result<DiscreteDist, OracleError> {
    if spread < 0.0 || !spread.is_finite() {
        return Err(OracleError::InvalidScenario(format!(
            "spread must be a nonnegative real, got {spread}"
        )));
    }
    let mut atoms = Vec::with_capacity(base.len() * 2);
    for (x, p) in base.atoms() {
        atoms.push((x * (1.0 - spread), 0.5 * p));
        atoms.push((x * (1.0 + spread), 0.5 * p));
    }
    let dilated = DiscreteDist::new(atoms)?;

    if (dilated.mean() - base.mean()).abs() > 1e-12 {
        return Err(OracleError::DilationFailed(format!(
            "dilated mean {} drifted from base mean {}",
            dilated.mean(),
            base.mean()
        )));
    }
    let verdict = check_cx(base, &dilated, 1e-12, &GridSpec::default(), 1e-12);
    match verdict.direction {
        Direction::ABelowB | Direction::Indistinguishable => {}
        other => {
            return Err(OracleError::DilationFailed(format!(
                "constructed pair failed the exact convex-order check: {other:?} (margin {})",
                verdict.margin
            )))
        }
    }
    Ok(dilated)
}

/// Build a verified mean-preserving spread of a symmetric mean-zero law.
pub fn make_dilation(base: &DiscreteDist, spread: f64) -> Result<DilationPair, OracleError> {
    if !base.is_symmetric(1e-12) {
        return Err(OracleError::InvalidScenario(
            "dilation base must be symmetric about zero".into(),
        ));
    }
    if base.mean().abs() > 1e-12 {
        return Err(OracleError::InvalidScenario(format!(
            "dilation base must have mean zero, got {}",
            base.mean()
        )));
    }
    let dilated = dilate_law(base, spread)?;
    Ok(DilationPair {
        base: base.clone(),
        dilated,
    })
}
