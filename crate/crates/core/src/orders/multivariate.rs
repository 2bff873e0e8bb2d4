//! Multivariate comparison over supermodular convex test functions.
//!
//! The tested cone is generated by φ(x) = ψ(c·x) with componentwise
//! nonnegative weights c and ψ a hinge (t − k)⁺ or squared hinge ((t − k)⁺)²:
//! such compositions are supermodular (all mixed second derivatives are
//! ψ''·cᵢcⱼ ≥ 0) and convex, and the hinges generate the convex cone the
//! univariate checks are built on.

use serde::{Deserialize, Serialize};

use super::dist::DistError;
use super::verdict::{EvidenceCurve, OrderVerdict, Relation};
use crate::math::compensated_sum;

/// Weighted point cloud in R^d: exact enumeration output (weights are true
/// probabilities) or a Monte Carlo sample (uniform weights). Expectations
/// against test functions are exact in the former case.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateDist {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl MultivariateDist {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, DistError> {
        let n = rows.len();
        if n == 0 {
            return Err(DistError::Empty);
        }
        let w = 1.0 / n as f64;
        Self::from_weighted(rows, vec![w; n])
    }

    pub fn from_weighted(rows: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self, DistError> {
        if rows.is_empty() {
            return Err(DistError::Empty);
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(DistError::Empty);
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(DistError::Invalid("ragged rows".into()));
        }
        if rows.len() != weights.len() {
            return Err(DistError::Invalid(
                "weights and rows must have equal length".into(),
            ));
        }
        for &w in &weights {
            if w < 0.0 || !w.is_finite() {
                return Err(DistError::NegativeProbability { point: 0.0, prob: w });
            }
        }
        let total = compensated_sum(weights.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(DistError::ProbabilitySum(total));
        }
        let mut points = Vec::with_capacity(rows.len() * dim);
        for r in &rows {
            if let Some(&bad) = r.iter().find(|v| !v.is_finite()) {
                return Err(DistError::NonFinite(bad));
            }
            points.extend_from_slice(r);
        }
        Ok(Self {
            dim,
            points,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_points(&self) -> usize {
        self.weights.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    /// E[φ(X)] with a deterministic (row-order) compensated reduction.
    pub fn expectation(&self, phi: impl Fn(&[f64]) -> f64) -> f64 {
        compensated_sum((0..self.n_points()).map(|i| self.weights[i] * phi(self.row(i))))
    }

    /// Weighted quantile of the projection c·X, for threshold grids.
    fn projection_quantiles(&self, weightvec: &[f64], levels: usize) -> Vec<f64> {
        let mut proj: Vec<(f64, f64)> = (0..self.n_points())
            .map(|i| {
                let t = self
                    .row(i)
                    .iter()
                    .zip(weightvec)
                    .map(|(x, c)| x * c)
                    .sum::<f64>();
                (t, self.weights[i])
            })
            .collect();
        proj.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut out = Vec::with_capacity(levels);
        let mut cum = 0.0;
        let mut next = 0;
        for (t, w) in proj {
            cum += w;
            while next < levels && cum >= (next as f64 + 0.5) / levels as f64 {
                out.push(t);
                next += 1;
            }
        }
        out.dedup();
        out
    }
}

/// Which class of test functions a family claims to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    ConvexUnivariate,
    IncreasingConvexUnivariate,
    SupermodularConvexMultivariate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HingeForm {
    /// ψ(t) = (t − k)⁺
    Hinge,
    /// ψ(t) = ((t − k)⁺)²
    HingeSquared,
}

/// One member φ(x) = ψ(c·x) of a test-function family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub weights: Vec<f64>,
    pub threshold: f64,
    pub form: HingeForm,
}

impl TestFunction {
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.weights.len());
        let t: f64 = x.iter().zip(&self.weights).map(|(v, c)| v * c).sum();
        let h = (t - self.threshold).max(0.0);
        match self.form {
            HingeForm::Hinge => h,
            HingeForm::HingeSquared => h * h,
        }
    }
}

/// A finite set of test functions standing in for a function class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionFamily {
    pub kind: FamilyKind,
    pub members: Vec<TestFunction>,
}

impl TestFunctionFamily {
    /// Univariate hinge family x ↦ (x − k)⁺ over the given thresholds.
    pub fn increasing_convex_univariate(thresholds: &[f64]) -> Self {
        TestFunctionFamily {
            kind: FamilyKind::IncreasingConvexUnivariate,
            members: thresholds
                .iter()
                .map(|&k| TestFunction {
                    weights: vec![1.0],
                    threshold: k,
                    form: HingeForm::Hinge,
                })
                .collect(),
        }
    }

    /// Default supermodular convex family for a pair of d-dimensional
    /// clouds: basis vectors, prefix sums and suffix sums as weight vectors
    /// (~3d directions), pooled projection quantiles as thresholds, and
    /// both hinge forms.
    pub fn supermodular_default(
        a: &MultivariateDist,
        b: &MultivariateDist,
        thresholds_per_weight: usize,
    ) -> Self {
        let dim = a.dim();
        let mut weight_vectors: Vec<Vec<f64>> = Vec::with_capacity(3 * dim);
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            weight_vectors.push(e);
        }
        for i in 0..dim {
            let mut p = vec![0.0; dim];
            p[..=i].iter_mut().for_each(|w| *w = 1.0);
            weight_vectors.push(p);
        }
        for i in 0..dim {
            let mut s = vec![0.0; dim];
            s[i..].iter_mut().for_each(|w| *w = 1.0);
            weight_vectors.push(s);
        }
        weight_vectors.dedup();

        let mut members = Vec::new();
        for wv in &weight_vectors {
            let mut ks = a.projection_quantiles(wv, thresholds_per_weight);
            ks.extend(b.projection_quantiles(wv, thresholds_per_weight));
            ks.sort_by(|x, y| x.partial_cmp(y).unwrap());
            ks.dedup();
            for &k in &ks {
                for form in [HingeForm::Hinge, HingeForm::HingeSquared] {
                    members.push(TestFunction {
                        weights: wv.clone(),
                        threshold: k,
                        form,
                    });
                }
            }
        }
        TestFunctionFamily {
            kind: FamilyKind::SupermodularConvexMultivariate,
            members,
        }
    }

    /// Numeric sanity check that every member lies in the claimed class:
    /// midpoint convexity on probe pairs, plus the lattice inequality
    /// φ(x) + φ(y) ≤ φ(x∧y) + φ(x∨y) for the supermodular kind.
    pub fn validate_on_probes(&self, probes: &[(Vec<f64>, Vec<f64>)], tol: f64) -> Result<(), DistError> {
        for m in &self.members {
            for (x, y) in probes {
                let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
                if m.eval(&mid) > 0.5 * (m.eval(x) + m.eval(y)) + tol {
                    return Err(DistError::Invalid(format!(
                        "member {m:?} fails midpoint convexity"
                    )));
                }
                if self.kind == FamilyKind::SupermodularConvexMultivariate {
                    let lo: Vec<f64> = x.iter().zip(y).map(|(a, b)| a.min(*b)).collect();
                    let hi: Vec<f64> = x.iter().zip(y).map(|(a, b)| a.max(*b)).collect();
                    if m.eval(x) + m.eval(y) > m.eval(&lo) + m.eval(&hi) + tol {
                        return Err(DistError::Invalid(format!(
                            "member {m:?} fails the lattice inequality"
                        )));
                    }
                }
                if self.kind != FamilyKind::ConvexUnivariate
                    && m.weights.iter().any(|&c| c < 0.0)
                {
                    return Err(DistError::Invalid(
                        "increasing families need nonnegative weights".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Compare two point clouds over every member of a supermodular convex
/// family: A ⪯ B iff E[φ(A)] ≤ E[φ(B)] + tol for all members. The verdict
/// grid carries the member thresholds and the evidence both expectation
/// curves.
pub fn check_supermodular_cx(
    a: &MultivariateDist,
    b: &MultivariateDist,
    family: &TestFunctionFamily,
    tol: f64,
) -> Result<OrderVerdict, DistError> {
    if a.dim() != b.dim() {
        return Err(DistError::Invalid(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    if family.kind != FamilyKind::SupermodularConvexMultivariate {
        return Err(DistError::Invalid(
            "family kind must be supermodular_convex_multivariate".into(),
        ));
    }
    if let Some(m) = family.members.iter().find(|m| m.weights.len() != a.dim()) {
        return Err(DistError::Invalid(format!(
            "member weight dimension {} does not match cloud dimension {}",
            m.weights.len(),
            a.dim()
        )));
    }
    let ev_a: Vec<f64> = family
        .members
        .iter()
        .map(|m| a.expectation(|x| m.eval(x)))
        .collect();
    let ev_b: Vec<f64> = family
        .members
        .iter()
        .map(|m| b.expectation(|x| m.eval(x)))
        .collect();
    let gaps: Vec<f64> = ev_a.iter().zip(&ev_b).map(|(ea, eb)| eb - ea).collect();
    let grid: Vec<f64> = family.members.iter().map(|m| m.threshold).collect();
    Ok(
        OrderVerdict::from_gaps(Relation::SupermodularCx, grid, &gaps, tol)
            .with_evidence(EvidenceCurve::new("family_expectation", ev_a, ev_b))
            .with_note(format!("family_members = {}", family.members.len())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{check_icx, Direction, EmpiricalDist, GridSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cloud(n: usize, dim: usize, spread: f64, seed: u64) -> MultivariateDist {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        MultivariateDist::from_rows(
            (0..n)
                .map(|_| {
                    (0..dim)
                        .map(|_| spread * (rng.random::<f64>() - 0.5))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_guards() {
        assert!(MultivariateDist::from_rows(vec![]).is_err());
        assert!(MultivariateDist::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(
            MultivariateDist::from_weighted(vec![vec![1.0], vec![2.0]], vec![0.6, 0.6]).is_err()
        );
    }

    #[test]
    fn batch_vs_itself_is_indistinguishable() {
        let a = random_cloud(500, 3, 2.0, 1);
        let fam = TestFunctionFamily::supermodular_default(&a, &a, 9);
        let v = check_supermodular_cx(&a, &a, &fam, 1e-12).unwrap();
        assert_eq!(v.direction, Direction::Indistinguishable);
        assert_eq!(v.margin, 0.0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = random_cloud(100, 2, 1.0, 2);
        let b = random_cloud(100, 3, 1.0, 3);
        let fam = TestFunctionFamily::supermodular_default(&a, &a, 5);
        assert!(check_supermodular_cx(&a, &b, &fam, 1e-12).is_err());
    }

    #[test]
    fn family_members_pass_their_class_checks() {
        let a = random_cloud(200, 4, 2.0, 4);
        let fam = TestFunctionFamily::supermodular_default(&a, &a, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let probes: Vec<(Vec<f64>, Vec<f64>)> = (0..50)
            .map(|_| {
                let p = |rng: &mut ChaCha8Rng| {
                    (0..4).map(|_| 4.0 * (rng.random::<f64>() - 0.5)).collect::<Vec<f64>>()
                };
                (p(&mut rng), p(&mut rng))
            })
            .collect();
        fam.validate_on_probes(&probes, 1e-9).unwrap();
    }

    #[test]
    fn single_coordinate_weights_reduce_to_univariate_icx() {
        // restrict the family to c = e₁ hinges: the verdict must agree with
        // the univariate icx check on the first marginal
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rows_a: Vec<Vec<f64>> = (0..4000)
            .map(|_| vec![rng.random::<f64>() - 0.5, rng.random::<f64>()])
            .collect();
        let rows_b: Vec<Vec<f64>> = (0..4000)
            .map(|_| vec![3.0 * (rng.random::<f64>() - 0.5), rng.random::<f64>()])
            .collect();
        let ma: Vec<f64> = rows_a.iter().map(|r| r[0]).collect();
        let mb: Vec<f64> = rows_b.iter().map(|r| r[0]).collect();
        let a = MultivariateDist::from_rows(rows_a).unwrap();
        let b = MultivariateDist::from_rows(rows_b).unwrap();

        let thresholds: Vec<f64> = (0..21).map(|i| -1.5 + 0.15 * i as f64).collect();
        let members: Vec<TestFunction> = thresholds
            .iter()
            .map(|&k| TestFunction {
                weights: vec![1.0, 0.0],
                threshold: k,
                form: HingeForm::Hinge,
            })
            .collect();
        let fam = TestFunctionFamily {
            kind: FamilyKind::SupermodularConvexMultivariate,
            members,
        };
        let tol = 0.02;
        let v = check_supermodular_cx(&a, &b, &fam, tol).unwrap();

        let da = EmpiricalDist::new(ma).unwrap();
        let db = EmpiricalDist::new(mb).unwrap();
        let u = check_icx(&da, &db, &GridSpec::default(), tol);
        assert_eq!(v.direction, u.direction);
        assert_eq!(v.direction, Direction::ABelowB);
    }
}
