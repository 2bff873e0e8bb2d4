use serde::{Deserialize, Serialize};

/// Which stochastic order a verdict speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Usual stochastic order: pointwise CDF dominance.
    St,
    /// Increasing convex order: stop-loss curve dominance.
    Icx,
    /// Convex order: increasing convex order plus equal means.
    Cx,
    /// Peakedness: usual stochastic order between absolute values.
    Peak,
    /// Kurtosis-flavoured comparison of squared variables.
    Kurtosis,
    /// Multivariate comparison over supermodular convex test functions.
    SupermodularCx,
}

/// Outcome of an order check between distributions A and B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// A is below B in the relation (A ⪯ B) beyond the tolerance band.
    ABelowB,
    /// B is below A beyond the tolerance band.
    BBelowA,
    /// The curves cross beyond the band in both directions.
    Incomparable,
    /// The curves stay inside the band everywhere.
    Indistinguishable,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::ABelowB => Direction::BBelowA,
            Direction::BBelowA => Direction::ABelowB,
            other => other,
        }
    }
}

/// A named pair of curves evaluated on the verdict's grid, e.g. the two
/// stop-loss curves behind an icx decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceCurve {
    pub name: String,
    pub values_a: Vec<f64>,
    pub values_b: Vec<f64>,
}

impl EvidenceCurve {
    pub fn new(name: impl Into<String>, values_a: Vec<f64>, values_b: Vec<f64>) -> Self {
        EvidenceCurve {
            name: name.into(),
            values_a,
            values_b,
        }
    }
}

/// Result of one order comparison.
///
/// `margin` is a single signed summary: the worst violation of "B ⪯ A"
/// minus the worst violation of "A ⪯ B", both floored at zero. A strictly
/// dominated pair therefore gets a positive margin equal to the largest
/// dominance gap, and swapping the arguments negates the margin exactly.
/// The two one-sided violations are kept as well so callers can see how far
/// each claim is from holding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub direction: Direction,
    pub margin: f64,
    /// Worst violation of "A ⪯ B" across the grid (0 when it holds).
    pub violation_a_below_b: f64,
    /// Worst violation of "B ⪯ A" across the grid (0 when it holds).
    pub violation_b_below_a: f64,
    pub tolerance: f64,
    pub grid: Vec<f64>,
    pub evidence: Vec<EvidenceCurve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl OrderVerdict {
    /// Decide a direction from dominance gaps. `gaps[i]` is oriented so
    /// that the population statement "A ⪯ B" makes every entry nonnegative.
    pub(crate) fn from_gaps(
        relation: Relation,
        grid: Vec<f64>,
        gaps: &[f64],
        tolerance: f64,
    ) -> Self {
        let d = decide(gaps, tolerance);
        OrderVerdict {
            relation,
            direction: d.direction,
            margin: d.margin,
            violation_a_below_b: d.viol_ab,
            violation_b_below_a: d.viol_ba,
            tolerance,
            grid,
            evidence: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn with_evidence(mut self, curve: EvidenceCurve) -> Self {
        self.evidence.push(curve);
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Worst violation of the direction actually claimed; zero when the
    /// claim holds exactly.
    pub fn worst_violation(&self) -> f64 {
        match self.direction {
            Direction::ABelowB => self.violation_a_below_b,
            Direction::BBelowA => self.violation_b_below_a,
            Direction::Indistinguishable => {
                self.violation_a_below_b.max(self.violation_b_below_a)
            }
            Direction::Incomparable => {
                self.violation_a_below_b.min(self.violation_b_below_a)
            }
        }
    }

    /// Internal consistency: the claimed direction must be compatible with
    /// the recorded violations and the tolerance.
    pub fn is_consistent(&self) -> bool {
        let ab_ok = self.violation_a_below_b <= self.tolerance;
        let ba_ok = self.violation_b_below_a <= self.tolerance;
        let direction_ok = match self.direction {
            Direction::ABelowB => ab_ok,
            Direction::BBelowA => ba_ok,
            Direction::Indistinguishable => ab_ok && ba_ok,
            Direction::Incomparable => true,
        };
        direction_ok && self.margin == self.violation_b_below_a - self.violation_a_below_b
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    /// Evidence curve as CSV with columns `k,value_A,value_B`.
    pub fn evidence_csv(&self, curve_name: &str) -> Option<String> {
        let curve = self.evidence.iter().find(|c| c.name == curve_name)?;
        let mut out = String::from("k,value_A,value_B\n");
        for ((k, a), b) in self
            .grid
            .iter()
            .zip(curve.values_a.iter())
            .zip(curve.values_b.iter())
        {
            out.push_str(&format!("{k},{a},{b}\n"));
        }
        Some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Decision {
    pub direction: Direction,
    pub margin: f64,
    pub viol_ab: f64,
    pub viol_ba: f64,
}

/// Shared decision rule. `viol_ab` measures how badly "A ⪯ B" fails at the
/// worst grid point, `viol_ba` the reverse; both are zero for a clean
/// dominance. The margin `viol_ba − viol_ab` negates exactly under argument
/// swap because each violation is the mirror of the other.
pub(crate) fn decide(gaps: &[f64], tolerance: f64) -> Decision {
    if gaps.is_empty() {
        return Decision {
            direction: Direction::Indistinguishable,
            margin: 0.0,
            viol_ab: 0.0,
            viol_ba: 0.0,
        };
    }
    let mut min_gap = f64::INFINITY;
    let mut max_gap = f64::NEG_INFINITY;
    for &g in gaps {
        min_gap = min_gap.min(g);
        max_gap = max_gap.max(g);
    }
    let viol_ab = (-min_gap).max(0.0);
    let viol_ba = max_gap.max(0.0);
    let direction = match (viol_ab <= tolerance, viol_ba <= tolerance) {
        (true, true) => Direction::Indistinguishable,
        (true, false) => Direction::ABelowB,
        (false, true) => Direction::BBelowA,
        (false, false) => Direction::Incomparable,
    };
    Decision {
        direction,
        margin: viol_ba - viol_ab,
        viol_ab,
        viol_ba,
    }
}
