use crate::garch::{RecursionKind, RecursionMap};
use crate::math::compensated_sum;
use crate::orders::{DiscreteDist, MultivariateDist};

use super::OracleError;

/// Hard cap on exhaustive enumerations.
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

/// The set {−1, +1}^m, enumerated lazily as bit patterns.
#[derive(Debug, Clone, Copy)]
pub struct SignVectorSet {
    m: usize,
}

/// One element of {−1, +1}^m; bit i set means +1 in coordinate i.
#[derive(Debug, Clone, Copy)]
pub struct SignVector {
    bits: u64,
    m: usize,
}

impl SignVector {
    pub fn sign(&self, i: usize) -> f64 {
        debug_assert!(i < self.m);
        if self.bits >> i & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }
}

impl SignVectorSet {
    /// `m` is capped at 20 (2^20 ≈ 1e6 vectors) to keep sums tractable.
    pub fn new(m: usize) -> Result<Self, OracleError> {
        if m > 20 {
            return Err(OracleError::TooManySignVectors { m });
        }
        Ok(SignVectorSet { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> u64 {
        1u64 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = SignVector> + '_ {
        let m = self.m;
        (0..self.len()).map(move |bits| SignVector { bits, m })
    }
}

/// One exhaustively enumerated path: its probability, logreturns X₀..Xₙ,
/// states s₀..sₙ₊₁ in the recursion's native coordinates (σ for volatility
/// recursions, σ² for variance recursions), and the total Sₙ = ΣXₖ.
#[derive(Debug, Clone, PartialEq)]
pub struct PathOutcome {
    pub prob: f64,
    pub x: Vec<f64>,
    pub states: Vec<f64>,
    pub sum: f64,
}

/// Exhaustive path tree for finite-support innovations: every combination
/// of atoms across steps becomes one weighted outcome, so expectations of
/// arbitrary path functionals are exact up to floating rounding.
///
/// Outcomes are produced in prefix-lexicographic order of the atom choices
/// and all reductions respect that order, so reported margins are
/// bit-stable run to run.
#[derive(Debug, Clone)]
pub struct ExactPathTree {
    recursion: RecursionMap,
    initial_state: f64,
    step_laws: Vec<DiscreteDist>,
}

impl ExactPathTree {
    /// `step_laws[k]` is the law of εₖ; the tree depth n is
    /// `step_laws.len() − 1`.
    pub fn new(
        recursion: RecursionMap,
        initial_state: f64,
        step_laws: Vec<DiscreteDist>,
    ) -> Result<Self, OracleError> {
        if step_laws.is_empty() {
            return Err(OracleError::InvalidScenario(
                "need at least one innovation law".into(),
            ));
        }
        if initial_state <= 0.0 || !initial_state.is_finite() {
            return Err(OracleError::InvalidScenario(format!(
                "initial state must be positive and finite, got {initial_state}"
            )));
        }
        Ok(Self {
            recursion,
            initial_state,
            step_laws,
        })
    }

    /// Same law at every step.
    pub fn iid(
        recursion: RecursionMap,
        initial_state: f64,
        law: DiscreteDist,
        depth: usize,
    ) -> Result<Self, OracleError> {
        Self::new(recursion, initial_state, vec![law; depth + 1])
    }

    /// Copy of the tree with the law of ε_k replaced.
    pub fn with_law_at(&self, k: usize, law: DiscreteDist) -> Result<Self, OracleError> {
        if k >= self.step_laws.len() {
            return Err(OracleError::InvalidScenario(format!(
                "perturbed step {k} exceeds depth {}",
                self.depth()
            )));
        }
        let mut laws = self.step_laws.clone();
        laws[k] = law;
        Self::new(self.recursion.clone(), self.initial_state, laws)
    }

    pub fn depth(&self) -> usize {
        self.step_laws.len() - 1
    }

    pub fn recursion(&self) -> &RecursionMap {
        &self.recursion
    }

    pub fn step_laws(&self) -> &[DiscreteDist] {
        &self.step_laws
    }

    /// Number of leaves = ∏ₖ |support(εₖ)|.
    pub fn outcome_count(&self) -> u128 {
        self.step_laws
            .iter()
            .map(|l| l.len() as u128)
            .product()
    }

    /// Exhaustive enumeration; errors when the leaf count exceeds
    /// [`ENUMERATION_LIMIT`].
    pub fn enumerate(&self) -> Result<Vec<PathOutcome>, OracleError> {
        let count = self.outcome_count();
        if count > ENUMERATION_LIMIT as u128 {
            return Err(OracleError::EnumerationTooLarge {
                estimated: count,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut outcomes = Vec::with_capacity(count as usize);
        let mut x_acc = Vec::with_capacity(self.step_laws.len());
        let mut state_acc = Vec::with_capacity(self.step_laws.len() + 1);
        state_acc.push(self.initial_state);
        self.walk(0, 1.0, &mut x_acc, &mut state_acc, &mut outcomes)?;
        Ok(outcomes)
    }

    fn walk(
        &self,
        step: usize,
        prob: f64,
        x_acc: &mut Vec<f64>,
        state_acc: &mut Vec<f64>,
        outcomes: &mut Vec<PathOutcome>,
    ) -> Result<(), OracleError> {
        let state = *state_acc.last().unwrap();
        if !state.is_finite() || state <= 0.0 {
            return Err(OracleError::StateDiverged { step, state });
        }
        if step == self.step_laws.len() {
            outcomes.push(PathOutcome {
                prob,
                x: x_acc.clone(),
                states: state_acc.clone(),
                sum: compensated_sum(x_acc.iter().copied()),
            });
            return Ok(());
        }
        let vol = match self.recursion.kind() {
            RecursionKind::M1 => state,
            RecursionKind::M2 => state.sqrt(),
        };
        for (eps, p) in self.step_laws[step].atoms() {
            if p == 0.0 {
                continue;
            }
            let driver = match self.recursion.kind() {
                RecursionKind::M1 => eps.abs(),
                RecursionKind::M2 => eps * eps,
            };
            x_acc.push(vol * eps);
            state_acc.push(self.recursion.step(driver, state));
            self.walk(step + 1, prob * p, x_acc, state_acc, outcomes)?;
            x_acc.pop();
            state_acc.pop();
        }
        Ok(())
    }

    /// Exact E[φ(outcome)] over the whole tree.
    pub fn exact_expectation(
        &self,
        phi: impl Fn(&PathOutcome) -> f64,
    ) -> Result<f64, OracleError> {
        let outcomes = self.enumerate()?;
        Ok(compensated_sum(outcomes.iter().map(|o| o.prob * phi(o))))
    }

    /// Exact marginal law of Xₖ.
    pub fn marginal_x(&self, k: usize) -> Result<DiscreteDist, OracleError> {
        self.marginal_of(|o| o.x[k], k <= self.depth(), "logreturn index")
    }

    /// Exact marginal law of the state after `k` updates (k ≤ depth + 1).
    pub fn marginal_state(&self, k: usize) -> Result<DiscreteDist, OracleError> {
        self.marginal_of(|o| o.states[k], k <= self.depth() + 1, "state index")
    }

    /// Exact law of Sₙ.
    pub fn marginal_sum(&self) -> Result<DiscreteDist, OracleError> {
        self.marginal_of(|o| o.sum, true, "sum")
    }

    fn marginal_of(
        &self,
        value: impl Fn(&PathOutcome) -> f64,
        index_ok: bool,
        what: &str,
    ) -> Result<DiscreteDist, OracleError> {
        if !index_ok {
            return Err(OracleError::InvalidScenario(format!(
                "{what} out of range for depth {}",
                self.depth()
            )));
        }
        let outcomes = self.enumerate()?;
        let atoms: Vec<(f64, f64)> = outcomes.iter().map(|o| (value(o), o.prob)).collect();
        Ok(DiscreteDist::new(atoms)?)
    }

    /// The joint law of (X₀, …, Xₙ) as a weighted point cloud.
    pub fn joint_x(&self) -> Result<MultivariateDist, OracleError> {
        let outcomes = self.enumerate()?;
        let rows: Vec<Vec<f64>> = outcomes.iter().map(|o| o.x.clone()).collect();
        let weights: Vec<f64> = outcomes.iter().map(|o| o.prob).collect();
        Ok(MultivariateDist::from_weighted(rows, weights)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garch::GarchParams;
    use crate::orders::Dist;

    fn two_point() -> DiscreteDist {
        DiscreteDist::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    fn garch_tree(depth: usize) -> ExactPathTree {
        let params = GarchParams::new(0.1, 0.3, 0.5).unwrap();
        ExactPathTree::iid(RecursionMap::garch11(params), 1.0, two_point(), depth).unwrap()
    }

    #[test]
    fn sign_vectors_enumerate_the_hypercube() {
        let set = SignVectorSet::new(3).unwrap();
        assert_eq!(set.len(), 8);
        let mut seen = std::collections::HashSet::new();
        for v in set.iter() {
            let key: Vec<i8> = (0..3).map(|i| v.sign(i) as i8).collect();
            assert!(key.iter().all(|&s| s == 1 || s == -1));
            seen.insert(key);
        }
        assert_eq!(seen.len(), 8);
        assert!(SignVectorSet::new(21).is_err());
    }

    #[test]
    fn two_point_depth_three_has_sixteen_outcomes() {
        let tree = garch_tree(3);
        let outcomes = tree.enumerate().unwrap();
        assert_eq!(outcomes.len(), 16);
        let total: f64 = compensated_sum(outcomes.iter().map(|o| o.prob));
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_law_gives_a_single_zero_path() {
        let params = GarchParams::new(0.1, 0.3, 0.5).unwrap();
        let zero = DiscreteDist::point_mass(0.0);
        let tree =
            ExactPathTree::iid(RecursionMap::garch11(params), 1.0, zero, 3).unwrap();
        let outcomes = tree.enumerate().unwrap();
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].prob, 1.0);
        assert_eq!(outcomes[0].sum, 0.0);
    }

    #[test]
    fn unit_innovations_make_the_first_update_deterministic() {
        // ε² ≡ 1 ⟹ σ₁² = 0.1 + 0.3 + 0.5 = 0.9 on every branch,
        // so X₁ ∈ {±√0.9}
        let tree = garch_tree(2);
        for o in tree.enumerate().unwrap() {
            assert!((o.states[1] - 0.9).abs() < 1e-15);
            assert!((o.x[1].abs() - 0.9_f64.sqrt()).abs() < 1e-12);
        }
        let x1 = tree.marginal_x(1).unwrap();
        assert_eq!(x1.len(), 2);
    }

    #[test]
    fn expectations_match_hand_enumeration() {
        let tree = garch_tree(3);
        // symmetry: E[S₃] = 0
        let mean_sum = tree.exact_expectation(|o| o.sum).unwrap();
        assert!(mean_sum.abs() < 1e-14);
        // normalization: E[1] = 1
        let one = tree.exact_expectation(|_| 1.0).unwrap();
        assert!((one - 1.0).abs() < 1e-12);

        // E[(S₃ − 0.5)⁺] by explicit loop over the 16 outcomes
        let outcomes = tree.enumerate().unwrap();
        let by_hand: f64 = outcomes
            .iter()
            .map(|o| o.prob * (o.sum - 0.5).max(0.0))
            .sum();
        let via_tree = tree
            .exact_expectation(|o| (o.sum - 0.5).max(0.0))
            .unwrap();
        assert!((by_hand - via_tree).abs() < 1e-14);
        // and through the marginal's stop-loss transform
        let sum_law = tree.marginal_sum().unwrap();
        assert!((sum_law.stop_loss(0.5) - by_hand).abs() < 1e-12);
    }

    #[test]
    fn enumeration_guard_trips_with_an_estimate() {
        let law = DiscreteDist::new(vec![
            (-2.0, 0.2),
            (-1.0, 0.2),
            (0.0, 0.2),
            (1.0, 0.2),
            (2.0, 0.2),
        ])
        .unwrap();
        let params = GarchParams::new(0.1, 0.3, 0.5).unwrap();
        let tree = ExactPathTree::iid(RecursionMap::garch11(params), 1.0, law, 9).unwrap();
        match tree.enumerate() {
            Err(OracleError::EnumerationTooLarge { estimated, .. }) => {
                assert_eq!(estimated, 5u128.pow(10));
            }
            other => panic!("expected the guard to trip, got {other:?}"),
        }
    }

    #[test]
    fn perturbed_tree_replaces_one_law() {
        let tree = garch_tree(3);
        let wide = two_point().scaled(2.0);
        let pert = tree.with_law_at(1, wide).unwrap();
        assert_eq!(pert.outcome_count(), 16);
        assert!(tree.with_law_at(9, two_point()).is_err());
        // the change shows up in X₁'s marginal support
        let base_x1 = tree.marginal_x(1).unwrap();
        let pert_x1 = pert.marginal_x(1).unwrap();
        assert!(pert_x1.support().1 > base_x1.support().1);
    }
}
