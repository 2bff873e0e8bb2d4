use serde::{Deserialize, Serialize};

use super::dist::Dist;

/// How evaluation grids for order checks are built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Number of pooled quantile levels for sample-backed inputs.
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { points: 512 }
    }
}

impl GridSpec {
    pub fn with_points(points: usize) -> Self {
        GridSpec { points }
    }
}

/// Common evaluation grid for a pair of distributions.
///
/// Exact-vs-exact pairs use the union of their support points, which is
/// where every CDF jump and stop-loss kink lives, so pointwise dominance on
/// the grid is dominance everywhere. Pairs involving samples use pooled
/// quantiles plus both supports' endpoints; order violations concentrate
/// near curve crossings, and quantile spacing puts resolution where the
/// mass is.
pub fn comparison_grid(a: &dyn Dist, b: &dyn Dist, spec: &GridSpec) -> Vec<f64> {
    let mut pts = match (a.atom_points(), b.atom_points()) {
        (Some(mut pa), Some(pb)) => {
            pa.extend(pb);
            pa
        }
        _ => {
            let levels = spec.points.max(2);
            let mut pts = Vec::with_capacity(2 * levels + 4);
            for i in 0..levels {
                let q = (i as f64 + 0.5) / levels as f64;
                pts.push(a.quantile(q));
                pts.push(b.quantile(q));
            }
            let (alo, ahi) = a.support();
            let (blo, bhi) = b.support();
            pts.extend_from_slice(&[alo, ahi, blo, bhi]);
            pts
        }
    };
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    pts
}
