//! Exact verification of the order-propagation properties on bundled (or
//! user-supplied) finite-support scenarios.
//!
//! Each property under test says: perturb one innovation law (or the
//! parameter triple) in a given stochastic-order direction, and a stated
//! functional of the process moves the same way. A scenario pins down the
//! recursion, the base innovation law, the perturbation and the depth; the
//! verifier builds both exact path trees, re-checks every hypothesis
//! exactly, and then decides the claimed conclusion with a 1e-12 band.

use serde::{Deserialize, Serialize};

use crate::garch::{GarchParams, RecursionKind, RecursionMap};
use crate::orders::{
    check_cx, check_st, check_supermodular_cx, Direction, Dist, DiscreteDist, GridSpec,
    OrderVerdict, TestFunctionFamily,
};

use super::dilation::dilate_law;
use super::tree::ExactPathTree;
use super::OracleError;

const EXACT_TOL: f64 = 1e-12;

/// Identifiers of the verifiable propagation properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Stochastic/increasing-convex order of the driver magnitudes
    /// propagates to the volatility (or variance) state.
    #[serde(rename = "thm-sigma-order")]
    SigmaOrder,
    /// The same premises propagate to |Xₙ| (volatility recursions) or Xₙ²
    /// (variance recursions).
    #[serde(rename = "thm-x-order")]
    LogReturnOrder,
    /// Convex order of one innovation propagates to Xₙ in volatility
    /// recursions.
    #[serde(rename = "thm-propconv")]
    ConvexPropagation,
    /// Convex order of one symmetric innovation propagates to the total Sₙ.
    #[serde(rename = "thm-sums-cx")]
    SumConvexOrder,
    /// Convex order of one symmetric innovation propagates to the joint
    /// vector (X₀, …, Xₙ) against supermodular convex test functions.
    #[serde(rename = "thm-supermod-cx")]
    SupermodularOrder,
    /// Componentwise-larger GARCH(1,1) parameters push |Xₙ|, Xₙ² up in the
    /// usual stochastic order and Xₙ, Sₙ up in the convex order.
    #[serde(rename = "thm-param-order")]
    ParameterOrder,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::SigmaOrder,
        TheoremId::LogReturnOrder,
        TheoremId::ConvexPropagation,
        TheoremId::SumConvexOrder,
        TheoremId::SupermodularOrder,
        TheoremId::ParameterOrder,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::SigmaOrder => "thm-sigma-order",
            TheoremId::LogReturnOrder => "thm-x-order",
            TheoremId::ConvexPropagation => "thm-propconv",
            TheoremId::SumConvexOrder => "thm-sums-cx",
            TheoremId::SupermodularOrder => "thm-supermod-cx",
            TheoremId::ParameterOrder => "thm-param-order",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.as_str() == s)
    }

    pub fn description(&self) -> &'static str {
        match self {
            TheoremId::SigmaOrder => {
                "st/icx order of one driver magnitude propagates to the state"
            }
            TheoremId::LogReturnOrder => {
                "st/icx order of one driver magnitude propagates to |X_n| / X_n^2"
            }
            TheoremId::ConvexPropagation => "convex order of one innovation propagates to X_n",
            TheoremId::SumConvexOrder => {
                "convex order of one symmetric innovation propagates to S_n"
            }
            TheoremId::SupermodularOrder => {
                "convex order of one symmetric innovation propagates to (X_0..X_n) over supermodular convex functions"
            }
            TheoremId::ParameterOrder => {
                "componentwise-larger GARCH(1,1) parameters increase |X_n|, X_n^2 (st) and X_n, S_n (cx)"
            }
        }
    }
}

/// How the perturbed process differs from the base process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// ε̃ₖ = factor · εₖ (factor ≥ 1 gives an st-larger magnitude).
    Scale { factor: f64 },
    /// Replace the law of εₖ outright.
    Replace { atoms: Vec<(f64, f64)> },
    /// Mean-preserving spread of εₖ via a martingale dilation.
    Dilate { spread: f64 },
    /// Replace the whole parameter triple (innovations unchanged).
    BumpParams {
        alpha0: f64,
        alpha1: f64,
        beta1: f64,
    },
}

/// A fully specified exact-verification scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremScenario {
    pub name: String,
    /// Builtin recursion label: garch11-var, garch11-vol or avgarch-vol.
    pub recursion: String,
    pub params: (f64, f64, f64),
    pub initial_state: f64,
    /// Atoms of the iid innovation law.
    pub innovation: Vec<(f64, f64)>,
    /// Index k of the perturbed innovation (for parameter bumps this field
    /// is ignored).
    pub perturb_step: usize,
    pub perturbation: Perturbation,
    /// Depth n: innovations ε₀..εₙ are drawn.
    pub depth: usize,
}

/// One verified hypothesis of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiseCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Verification outcome for a single conclusion item of a theorem on one
/// scenario. `conclusion` is absent when a required premise failed, in
/// which case nothing is claimed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub scenario: String,
    pub item: String,
    pub premises: Vec<PremiseCheck>,
    pub conclusion: Option<OrderVerdict>,
    pub exact: bool,
    pub passed: bool,
}

impl TheoremReport {
    pub fn premise_failed(&self) -> bool {
        self.premises.iter().any(|p| !p.passed)
    }
}

fn holds(direction: Direction) -> bool {
    matches!(
        direction,
        Direction::ABelowB | Direction::Indistinguishable
    )
}

struct ScenarioContext {
    base: ExactPathTree,
    perturbed: ExactPathTree,
    base_law: DiscreteDist,
    perturbed_law: DiscreteDist,
    kind: RecursionKind,
    recursion_label: String,
    params: GarchParams,
    perturbed_params: Option<GarchParams>,
}

fn build_context(scenario: &TheoremScenario) -> Result<ScenarioContext, OracleError> {
    let (a0, a1, b1) = scenario.params;
    let params = GarchParams::new_unchecked(a0, a1, b1)?;
    let recursion = RecursionMap::from_label(&scenario.recursion, params)?;
    let base_law = DiscreteDist::new(scenario.innovation.clone())?;
    let base = ExactPathTree::iid(
        recursion.clone(),
        scenario.initial_state,
        base_law.clone(),
        scenario.depth,
    )?;

    let (perturbed, perturbed_law, perturbed_params) = match &scenario.perturbation {
        Perturbation::Scale { factor } => {
            if *factor <= 0.0 || factor.is_nan() {
                return Err(OracleError::InvalidScenario(format!(
                    "scale factor must be positive, got {factor}"
                )));
            }
            let law = base_law.scaled(*factor);
            (
                base.with_law_at(scenario.perturb_step, law.clone())?,
                law,
                None,
            )
        }
        Perturbation::Replace { atoms } => {
            let law = DiscreteDist::new(atoms.clone())?;
            (
                base.with_law_at(scenario.perturb_step, law.clone())?,
                law,
                None,
            )
        }
        Perturbation::Dilate { spread } => {
            let law = dilate_law(&base_law, *spread)?;
            (
                base.with_law_at(scenario.perturb_step, law.clone())?,
                law,
                None,
            )
        }
        Perturbation::BumpParams {
            alpha0,
            alpha1,
            beta1,
        } => {
            let p2 = GarchParams::new_unchecked(*alpha0, *alpha1, *beta1)?;
            let rec2 = RecursionMap::from_label(&scenario.recursion, p2)?;
            let tree2 = ExactPathTree::iid(
                rec2,
                scenario.initial_state,
                base_law.clone(),
                scenario.depth,
            )?;
            (tree2, base_law.clone(), Some(p2))
        }
    };

    Ok(ScenarioContext {
        kind: recursion.kind(),
        recursion_label: scenario.recursion.clone(),
        base,
        perturbed,
        base_law,
        perturbed_law,
        params,
        perturbed_params,
    })
}

fn premise_from_verdict(name: &str, v: &OrderVerdict) -> PremiseCheck {
    PremiseCheck {
        name: name.to_string(),
        passed: holds(v.direction),
        detail: format!("direction {:?}, margin {:e}", v.direction, v.margin),
    }
}

fn symmetry_premise(name: &str, law: &DiscreteDist) -> PremiseCheck {
    let sym = law.is_symmetric(1e-12);
    PremiseCheck {
        name: name.to_string(),
        passed: sym,
        detail: if sym {
            "symmetric about 0".to_string()
        } else {
            "support or probabilities are not mirror-symmetric".to_string()
        },
    }
}

/// Verify one theorem on one scenario, returning one report per conclusion
/// item whose premises hold, or a single premise-failure report when the
/// scenario does not satisfy the theorem's hypotheses at all.
pub fn verify_theorem(
    id: TheoremId,
    scenario: &TheoremScenario,
) -> Result<Vec<TheoremReport>, OracleError> {
    let ctx = build_context(scenario)?;
    let grid = GridSpec::default();
    let report = |item: &str, premises: Vec<PremiseCheck>, conclusion: Option<OrderVerdict>| {
        let premises_ok = premises.iter().all(|p| p.passed);
        let passed = premises_ok
            && conclusion
                .as_ref()
                .map(|v| holds(v.direction))
                .unwrap_or(false);
        TheoremReport {
            theorem: id.as_str().to_string(),
            scenario: scenario.name.clone(),
            item: item.to_string(),
            premises,
            conclusion,
            exact: true,
            passed,
        }
    };

    match id {
        TheoremId::SigmaOrder | TheoremId::LogReturnOrder => {
            if matches!(scenario.perturbation, Perturbation::BumpParams { .. }) {
                return Err(OracleError::InvalidScenario(
                    "driver-order theorems perturb an innovation, not the parameters".into(),
                ));
            }
            // premises are on the driver magnitudes: |ε| for volatility
            // recursions, ε² for variance recursions
            let (base_driver, pert_driver): (Box<dyn Dist>, Box<dyn Dist>) = match ctx.kind {
                RecursionKind::M1 => (ctx.base_law.abs(), ctx.perturbed_law.abs()),
                RecursionKind::M2 => (ctx.base_law.square(), ctx.perturbed_law.square()),
            };
            let st_premise = check_st(
                base_driver.as_ref(),
                pert_driver.as_ref(),
                &grid,
                EXACT_TOL,
            );
            let icx_premise = crate::orders::check_icx(
                base_driver.as_ref(),
                pert_driver.as_ref(),
                &grid,
                EXACT_TOL,
            );
            let driver_name = match ctx.kind {
                RecursionKind::M1 => "driver |eps|",
                RecursionKind::M2 => "driver eps^2",
            };

            let mut reports = Vec::new();
            let n = scenario.depth;
            for (order_name, premise_verdict, premise_holds) in [
                ("st", &st_premise, holds(st_premise.direction)),
                ("icx", &icx_premise, holds(icx_premise.direction)),
            ] {
                if !premise_holds {
                    continue;
                }
                let premises = vec![premise_from_verdict(
                    &format!("{driver_name} {order_name}-ordered"),
                    premise_verdict,
                )];
                let (item, verdict) = match id {
                    TheoremId::SigmaOrder => {
                        let a = ctx.base.marginal_state(n + 1)?;
                        let b = ctx.perturbed.marginal_state(n + 1)?;
                        let v = match order_name {
                            "st" => check_st(&a, &b, &grid, EXACT_TOL),
                            _ => crate::orders::check_icx(&a, &b, &grid, EXACT_TOL),
                        };
                        (format!("state_{order_name}"), v)
                    }
                    _ => {
                        let (a, b): (Box<dyn Dist>, Box<dyn Dist>) = match ctx.kind {
                            RecursionKind::M1 => (
                                Box::new(ctx.base.marginal_x(n)?.mapped(f64::abs)),
                                Box::new(ctx.perturbed.marginal_x(n)?.mapped(f64::abs)),
                            ),
                            RecursionKind::M2 => (
                                Box::new(ctx.base.marginal_x(n)?.mapped(|x| x * x)),
                                Box::new(ctx.perturbed.marginal_x(n)?.mapped(|x| x * x)),
                            ),
                        };
                        let v = match order_name {
                            "st" => check_st(a.as_ref(), b.as_ref(), &grid, EXACT_TOL),
                            _ => crate::orders::check_icx(a.as_ref(), b.as_ref(), &grid, EXACT_TOL),
                        };
                        let coord = match ctx.kind {
                            RecursionKind::M1 => "abs_x",
                            RecursionKind::M2 => "x_squared",
                        };
                        (format!("{coord}_{order_name}"), v)
                    }
                };
                reports.push(report(&item, premises, Some(verdict)));
            }
            if reports.is_empty() {
                reports.push(report(
                    "premises",
                    vec![
                        premise_from_verdict(&format!("{driver_name} st-ordered"), &st_premise),
                        premise_from_verdict(&format!("{driver_name} icx-ordered"), &icx_premise),
                    ],
                    None,
                ));
            }
            Ok(reports)
        }

        TheoremId::ConvexPropagation | TheoremId::SumConvexOrder | TheoremId::SupermodularOrder => {
            if matches!(scenario.perturbation, Perturbation::BumpParams { .. }) {
                return Err(OracleError::InvalidScenario(
                    "convex-propagation theorems perturb an innovation, not the parameters".into(),
                ));
            }
            let mut premises = vec![PremiseCheck {
                name: "volatility-coordinate recursion".to_string(),
                passed: ctx.kind == RecursionKind::M1,
                detail: format!("recursion kind {}", ctx.kind),
            }];
            let cx_premise = check_cx(
                &ctx.base_law,
                &ctx.perturbed_law,
                EXACT_TOL,
                &grid,
                EXACT_TOL,
            );
            premises.push(premise_from_verdict("innovation cx-ordered", &cx_premise));
            if id != TheoremId::ConvexPropagation {
                premises.push(symmetry_premise("base innovation symmetric", &ctx.base_law));
                premises.push(symmetry_premise(
                    "perturbed innovation symmetric",
                    &ctx.perturbed_law,
                ));
            }
            if premises.iter().any(|p| !p.passed) {
                return Ok(vec![report("premises", premises, None)]);
            }

            let (item, verdict) = match id {
                TheoremId::ConvexPropagation => {
                    let a = ctx.base.marginal_x(scenario.depth)?;
                    let b = ctx.perturbed.marginal_x(scenario.depth)?;
                    ("x_cx", check_cx(&a, &b, EXACT_TOL, &grid, EXACT_TOL))
                }
                TheoremId::SumConvexOrder => {
                    let a = ctx.base.marginal_sum()?;
                    let b = ctx.perturbed.marginal_sum()?;
                    ("sum_cx", check_cx(&a, &b, EXACT_TOL, &grid, EXACT_TOL))
                }
                _ => {
                    let a = ctx.base.joint_x()?;
                    let b = ctx.perturbed.joint_x()?;
                    let family = TestFunctionFamily::supermodular_default(&a, &b, 9);
                    (
                        "joint_supermodular_cx",
                        check_supermodular_cx(&a, &b, &family, EXACT_TOL)?,
                    )
                }
            };
            Ok(vec![report(item, premises, Some(verdict))])
        }

        TheoremId::ParameterOrder => {
            let mut premises = vec![PremiseCheck {
                name: "garch11 recursion".to_string(),
                passed: ctx.recursion_label.starts_with("garch11"),
                detail: format!("recursion label {}", ctx.recursion_label),
            }];
            let p2 = match ctx.perturbed_params {
                Some(p2) => p2,
                None => {
                    return Err(OracleError::InvalidScenario(
                        "parameter-order scenarios need a bump_params perturbation".into(),
                    ))
                }
            };
            let p1 = ctx.params;
            let dominates = p2.alpha0() >= p1.alpha0()
                && p2.alpha1() >= p1.alpha1()
                && p2.beta1() >= p1.beta1();
            premises.push(PremiseCheck {
                name: "parameters componentwise larger".to_string(),
                passed: dominates,
                detail: format!(
                    "({}, {}, {}) vs ({}, {}, {})",
                    p1.alpha0(),
                    p1.alpha1(),
                    p1.beta1(),
                    p2.alpha0(),
                    p2.alpha1(),
                    p2.beta1()
                ),
            });
            let sym = symmetry_premise("innovation symmetric", &ctx.base_law);
            if premises.iter().any(|p| !p.passed) {
                premises.push(sym);
                return Ok(vec![report("premises", premises, None)]);
            }

            let n = scenario.depth;
            let xa = ctx.base.marginal_x(n)?;
            let xb = ctx.perturbed.marginal_x(n)?;
            let sa = ctx.base.marginal_sum()?;
            let sb = ctx.perturbed.marginal_sum()?;

            let mut reports = vec![
                report(
                    "abs_x_st",
                    premises.clone(),
                    Some(check_st(
                        &xa.mapped(f64::abs),
                        &xb.mapped(f64::abs),
                        &grid,
                        EXACT_TOL,
                    )),
                ),
                report(
                    "x_squared_st",
                    premises.clone(),
                    Some(check_st(
                        &xa.mapped(|x| x * x),
                        &xb.mapped(|x| x * x),
                        &grid,
                        EXACT_TOL,
                    )),
                ),
                report(
                    "x_cx",
                    premises.clone(),
                    Some(check_cx(&xa, &xb, EXACT_TOL, &grid, EXACT_TOL)),
                ),
            ];
            // the sum conclusion additionally needs symmetric innovations
            let mut sum_premises = premises;
            sum_premises.push(sym);
            let sum_verdict = if sum_premises.iter().all(|p| p.passed) {
                Some(check_cx(&sa, &sb, EXACT_TOL, &grid, EXACT_TOL))
            } else {
                None
            };
            reports.push(report("sum_cx", sum_premises, sum_verdict));
            Ok(reports)
        }
    }
}

/// Bundled scenarios exercising each theorem on 2- and 3-point symmetric
/// innovations at depths within the enumeration guard.
pub fn builtin_scenarios(id: TheoremId) -> Vec<TheoremScenario> {
    let pm1 = vec![(-1.0, 0.5), (1.0, 0.5)];
    let two_mag = vec![(-1.5, 0.25), (-0.5, 0.25), (0.5, 0.25), (1.5, 0.25)];
    let three01 = vec![(-1.0, 0.25), (0.0, 0.5), (1.0, 0.25)];
    // |ε̃| ∈ {0.5, 1.6} is icx-above |ε| ≡ 1 (mean 1.05, dominating
    // stop-loss) but not st-above (its CDF is higher at 0.5)
    let icx_only_m1 = vec![(-1.6, 0.25), (-0.5, 0.25), (0.5, 0.25), (1.6, 0.25)];
    // ε̃² ∈ {0.09, 2.56} with weights {0.6, 0.4} is icx-above ε² ∈ {0, 1}
    // but st-incomparable to it
    let icx_only_m2 = vec![(-1.6, 0.2), (-0.3, 0.3), (0.3, 0.3), (1.6, 0.2)];
    let p535 = (0.1, 0.3, 0.5);
    let p222 = (0.2, 0.2, 0.2);

    let scenario = |name: &str,
                    recursion: &str,
                    params: (f64, f64, f64),
                    innovation: &Vec<(f64, f64)>,
                    perturb_step: usize,
                    perturbation: Perturbation,
                    depth: usize| TheoremScenario {
        name: name.to_string(),
        recursion: recursion.to_string(),
        params,
        initial_state: 1.0,
        innovation: innovation.clone(),
        perturb_step,
        perturbation,
        depth,
    };

    match id {
        TheoremId::SigmaOrder => vec![
            scenario(
                "m1-garch-two-mag-scale15-k1-n4",
                "garch11-vol",
                p535,
                &two_mag,
                1,
                Perturbation::Scale { factor: 1.5 },
                4,
            ),
            scenario(
                "m1-avgarch-three-point-scale20-k0-n5",
                "avgarch-vol",
                p535,
                &three01,
                0,
                Perturbation::Scale { factor: 2.0 },
                5,
            ),
            scenario(
                "m2-garch-two-mag-scale15-k2-n4",
                "garch11-var",
                p222,
                &two_mag,
                2,
                Perturbation::Scale { factor: 1.5 },
                4,
            ),
            scenario(
                "m1-garch-icx-only-k1-n4",
                "garch11-vol",
                p535,
                &pm1,
                1,
                Perturbation::Replace {
                    atoms: icx_only_m1.clone(),
                },
                4,
            ),
            scenario(
                "m2-garch-icx-only-k1-n5",
                "garch11-var",
                p222,
                &three01,
                1,
                Perturbation::Replace {
                    atoms: icx_only_m2.clone(),
                },
                5,
            ),
        ],
        TheoremId::LogReturnOrder => vec![
            scenario(
                "m1-garch-two-mag-scale15-k0-n4",
                "garch11-vol",
                p535,
                &two_mag,
                0,
                Perturbation::Scale { factor: 1.5 },
                4,
            ),
            scenario(
                "m1-avgarch-three-point-scale20-k2-n5",
                "avgarch-vol",
                p535,
                &three01,
                2,
                Perturbation::Scale { factor: 2.0 },
                5,
            ),
            scenario(
                "m2-garch-two-mag-scale15-k1-n4",
                "garch11-var",
                p222,
                &two_mag,
                1,
                Perturbation::Scale { factor: 1.5 },
                4,
            ),
            scenario(
                "m1-garch-icx-only-k2-n4",
                "garch11-vol",
                p535,
                &pm1,
                2,
                Perturbation::Replace {
                    atoms: icx_only_m1,
                },
                4,
            ),
            scenario(
                "m2-garch-icx-only-k0-n5",
                "garch11-var",
                p222,
                &three01,
                0,
                Perturbation::Replace {
                    atoms: icx_only_m2,
                },
                5,
            ),
        ],
        TheoremId::ConvexPropagation => vec![
            scenario(
                "m1-garch-pm1-dilate05-k1-n4",
                "garch11-vol",
                p535,
                &pm1,
                1,
                Perturbation::Dilate { spread: 0.5 },
                4,
            ),
            scenario(
                "m1-avgarch-three-point-dilate08-k0-n5",
                "avgarch-vol",
                p535,
                &three01,
                0,
                Perturbation::Dilate { spread: 0.8 },
                5,
            ),
            scenario(
                "m1-garch-two-mag-dilate03-k3-n5",
                "garch11-vol",
                p222,
                &two_mag,
                3,
                Perturbation::Dilate { spread: 0.3 },
                5,
            ),
            scenario(
                "m1-garch-pm1-dilate05-last-k4-n4",
                "garch11-vol",
                p535,
                &pm1,
                4,
                Perturbation::Dilate { spread: 0.5 },
                4,
            ),
        ],
        TheoremId::SumConvexOrder => vec![
            scenario(
                "m1-garch-pm1-dilate05-k1-n4",
                "garch11-vol",
                p535,
                &pm1,
                1,
                Perturbation::Dilate { spread: 0.5 },
                4,
            ),
            scenario(
                "m1-avgarch-three-point-dilate06-k2-n6",
                "avgarch-vol",
                p535,
                &three01,
                2,
                Perturbation::Dilate { spread: 0.6 },
                6,
            ),
            scenario(
                "m1-garch-two-mag-dilate04-k0-n5",
                "garch11-vol",
                p222,
                &two_mag,
                0,
                Perturbation::Dilate { spread: 0.4 },
                5,
            ),
            scenario(
                "m1-garch-three-point-dilate10-k3-n8",
                "garch11-vol",
                p535,
                &three01,
                3,
                Perturbation::Dilate { spread: 1.0 },
                8,
            ),
        ],
        TheoremId::SupermodularOrder => vec![
            scenario(
                "m1-garch-pm1-dilate05-k1-n3",
                "garch11-vol",
                p535,
                &pm1,
                1,
                Perturbation::Dilate { spread: 0.5 },
                3,
            ),
            scenario(
                "m1-avgarch-three-point-dilate08-k0-n4",
                "avgarch-vol",
                p535,
                &three01,
                0,
                Perturbation::Dilate { spread: 0.8 },
                4,
            ),
            scenario(
                "m1-garch-two-mag-dilate03-k2-n4",
                "garch11-vol",
                p222,
                &two_mag,
                2,
                Perturbation::Dilate { spread: 0.3 },
                4,
            ),
        ],
        TheoremId::ParameterOrder => vec![
            scenario(
                "garch-pm1-alpha0-up-n5",
                "garch11-var",
                p222,
                &pm1,
                0,
                Perturbation::BumpParams {
                    alpha0: 0.5,
                    alpha1: 0.2,
                    beta1: 0.2,
                },
                5,
            ),
            scenario(
                "garch-three-point-alpha1-up-n6",
                "garch11-var",
                p222,
                &three01,
                0,
                Perturbation::BumpParams {
                    alpha0: 0.2,
                    alpha1: 0.5,
                    beta1: 0.2,
                },
                6,
            ),
            scenario(
                "garch-two-mag-beta1-up-n5",
                "garch11-var",
                p222,
                &two_mag,
                0,
                Perturbation::BumpParams {
                    alpha0: 0.2,
                    alpha1: 0.2,
                    beta1: 0.5,
                },
                5,
            ),
            scenario(
                "garch-pm1-all-up-n5",
                "garch11-var",
                p222,
                &pm1,
                0,
                Perturbation::BumpParams {
                    alpha0: 0.4,
                    alpha1: 0.3,
                    beta1: 0.4,
                },
                5,
            ),
        ],
    }
}

/// Run the full bundled suite for one theorem.
pub fn run_builtin_suite(id: TheoremId) -> Result<Vec<TheoremReport>, OracleError> {
    let mut reports = Vec::new();
    for scenario in builtin_scenarios(id) {
        reports.extend(verify_theorem(id, &scenario)?);
    }
    Ok(reports)
}
