//! Acceptance gate: one test per criterion, each printing a PASS line with
//! its runtime (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance is pinned here, in code.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use garch_orders::garch::{
    closed_form_variance, GarchParams, InnovationSpec,
};
use garch_orders::oracle::{
    convexity_check, even_grid, make_dilation, run_builtin_suite, symmetrize_h, ScalarFn,
    TheoremId,
};
use garch_orders::orders::{
    check_cx, check_icx, check_st, default_mean_tolerance, default_tolerance, kurtosis_beta2,
    sign_changes, Direction, Dist, DiscreteDist, EmpiricalDist, GridSpec,
};
use garch_orders_cli::commands::run_fig1;
use garch_orders_cli::config::{CliOverrides, ResolvedConfig};

struct Criterion {
    name: &'static str,
    start: Instant,
}

impl Criterion {
    fn begin(name: &'static str) -> Self {
        Criterion {
            name,
            start: Instant::now(),
        }
    }

    fn finish(self, pass: bool, detail: &str, budget: Option<Duration>) {
        let elapsed = self.start.elapsed();
        let within_budget = budget.map(|b| elapsed <= b).unwrap_or(true);
        let status = if pass && within_budget { "PASS" } else { "FAIL" };
        println!(
            "acceptance: {:<28} {status} ({elapsed:.2?}) {detail}",
            self.name
        );
        assert!(pass, "{} failed: {detail}", self.name);
        assert!(
            within_budget,
            "{} overran its {budget:?} budget: {elapsed:?}",
            self.name
        );
    }
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(tag);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

// --------------------------------------------------------------------------
// 1. Closed-form variance identity against the iterated recursion
// --------------------------------------------------------------------------

#[test]
fn closed_form_identity() {
    let c = Criterion::begin("closed-form identity");
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a0 = 0.01 + rng.random::<f64>();
        let a1 = 0.01 + 0.6 * rng.random::<f64>();
        let b1 = 0.01 + (0.98 - a1) * rng.random::<f64>();
        let params = GarchParams::new(a0, a1, b1).unwrap();
        let sigma0_sq = 0.05 + 3.0 * rng.random::<f64>();
        let n = 1 + (rng.random::<u64>() % 100) as usize;
        let eps_sq: Vec<f64> = (0..n).map(|_| 5.0 * rng.random::<f64>()).collect();

        let mut state = sigma0_sq;
        for &e in &eps_sq {
            state = params.alpha0() + params.alpha1() * e * state + params.beta1() * state;
        }
        let closed = closed_form_variance(&params, sigma0_sq, &eps_sq).unwrap();
        worst = worst.max((closed - state).abs() / state);
    }
    c.finish(
        worst <= 1e-12,
        &format!("worst relative error {worst:.3e} over 1000 draws (bound 1e-12)"),
        Some(Duration::from_secs(1)),
    );
}

// --------------------------------------------------------------------------
// 2. Exact theorem suite
// --------------------------------------------------------------------------

#[test]
fn exact_theorem_suite() {
    let c = Criterion::begin("exact theorem suite");
    let mut total = 0usize;
    let mut failures = Vec::new();
    let mut worst_violation: f64 = 0.0;
    for id in TheoremId::ALL {
        let reports = run_builtin_suite(id).unwrap();
        assert!(
            garch_orders::oracle::builtin_scenarios(id).len() >= 3,
            "{id:?} ships fewer than 3 scenarios"
        );
        for r in reports {
            total += 1;
            match &r.conclusion {
                Some(v) => {
                    worst_violation = worst_violation.max(v.violation_a_below_b);
                    if !r.passed || v.violation_a_below_b > 1e-12 {
                        failures.push(format!("{}/{}/{}", r.theorem, r.scenario, r.item));
                    }
                }
                None => failures.push(format!("{}/{} premise", r.theorem, r.scenario)),
            }
        }
    }
    c.finish(
        failures.is_empty(),
        &format!(
            "{total} conclusions, worst exact violation {worst_violation:.3e} (bound 1e-12); failures: {failures:?}"
        ),
        Some(Duration::from_secs(60)),
    );
}

// --------------------------------------------------------------------------
// 3. Baseline-vs-variants experiment at full size
// --------------------------------------------------------------------------

#[test]
fn fig1_reproduction() {
    let c = Criterion::begin("fig1 reproduction");
    let overrides = CliOverrides {
        seed: Some(42),
        paths: Some(100_000),
        out: Some(tmp_dir("acceptance_fig1")),
        allow_nonstationary: false,
    };
    let resolved = ResolvedConfig::resolve(None, &overrides).unwrap();
    let run = run_fig1(&resolved).unwrap();

    let mut problems = Vec::new();

    // (i) every variant's stop-loss curve dominates the baseline within the
    // statistical band at every grid point: that is exactly the cx verdict
    for v in &run.report.verdicts {
        if v.verdict.direction != Direction::ABelowB {
            problems.push(format!("{}: {:?}", v.name, v.verdict.direction));
        }
        if !v.verdict.is_consistent() {
            problems.push(format!("{}: inconsistent verdict", v.name));
        }
    }

    // (ii) sample variance strictly larger beyond four standard errors,
    // using the seed-paired per-path differences
    let (base_name, base) = &run.variant_sums[0];
    assert_eq!(base_name, "baseline");
    let n = base.len() as f64;
    let base_mean = base.iter().sum::<f64>() / n;
    for (name, sums) in &run.variant_sums[1..] {
        let var_mean = sums.iter().sum::<f64>() / n;
        let diffs: Vec<f64> = sums
            .iter()
            .zip(base)
            .map(|(s_var, s_base)| {
                (s_var - var_mean).powi(2) - (s_base - base_mean).powi(2)
            })
            .collect();
        let d_mean = diffs.iter().sum::<f64>() / n;
        let d_var = diffs.iter().map(|d| (d - d_mean).powi(2)).sum::<f64>() / n;
        let se = (d_var / n).sqrt();
        if d_mean <= 4.0 * se {
            problems.push(format!(
                "{name}: variance gap {d_mean:.4} not beyond 4 se {se:.4}"
            ));
        }
    }

    // (iii) sample means within four standard errors of zero
    for (name, sums) in &run.variant_sums {
        let mean = sums.iter().sum::<f64>() / n;
        let sd = (sums.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n).sqrt();
        let se = sd / n.sqrt();
        if mean.abs() > 4.0 * se {
            problems.push(format!("{name}: mean {mean:.4} beyond 4 se {se:.4}"));
        }
    }

    c.finish(
        problems.is_empty(),
        &format!(
            "3 variants vs baseline at 1e5 paths; problems: {problems:?}"
        ),
        Some(Duration::from_secs(30)),
    );
}

// --------------------------------------------------------------------------
// 4. Order-implication properties on randomized pairs
// --------------------------------------------------------------------------

enum Pair {
    Exact(DiscreteDist, DiscreteDist),
    Sampled(EmpiricalDist, EmpiricalDist),
}

fn random_symmetric_discrete(rng: &mut ChaCha8Rng) -> DiscreteDist {
    let atoms = 1 + (rng.random::<u64>() % 3) as usize;
    let mut raw = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..atoms {
        raw.push(0.2 + 2.0 * rng.random::<f64>());
        weights.push(0.1 + rng.random::<f64>());
    }
    let total: f64 = 2.0 * weights.iter().sum::<f64>();
    DiscreteDist::new(
        raw.iter()
            .zip(&weights)
            .flat_map(|(&x, &w)| [(x, w / total), (-x, w / total)])
            .collect(),
    )
    .unwrap()
}

fn gaussian_sample(rng: &mut ChaCha8Rng, n: usize, scale: f64, shift: f64) -> EmpiricalDist {
    EmpiricalDist::new(
        (0..n)
            .map(|_| {
                shift + scale * garch_orders::math::normal_quantile(rng.random::<f64>().max(1e-300))
            })
            .collect(),
    )
    .unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng, case: usize) -> Pair {
    match case % 8 {
        0 => {
            // exact: scale-ordered
            let a = random_symmetric_discrete(rng);
            let b = a.scaled(1.2 + rng.random::<f64>());
            Pair::Exact(a, b)
        }
        1 => {
            // exact: mean-preserving spread
            let a = random_symmetric_discrete(rng);
            let b = make_dilation(&a, 0.3 + rng.random::<f64>()).unwrap().dilated;
            Pair::Exact(a, b)
        }
        2 => {
            // exact: identical
            let a = random_symmetric_discrete(rng);
            Pair::Exact(a.clone(), a)
        }
        3 => {
            // exact: shifted copy (means differ)
            let a = random_symmetric_discrete(rng);
            let shift = 0.1 + rng.random::<f64>();
            let b = a.mapped(|x| x + shift);
            Pair::Exact(a, b)
        }
        4 => {
            // exact: crossing pair, st-incomparable by construction
            let a = DiscreteDist::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
            let w = 0.55 + 0.2 * rng.random::<f64>();
            let b = DiscreteDist::new(vec![
                (-1.8, (1.0 - w) / 2.0),
                (-0.3, w / 2.0),
                (0.3, w / 2.0),
                (1.8, (1.0 - w) / 2.0),
            ])
            .unwrap();
            Pair::Exact(a, b)
        }
        5 => {
            // samples: scale-ordered Gaussians
            let n = 20_000;
            let scale = 1.4 + rng.random::<f64>();
            let a = gaussian_sample(rng, n, 1.0, 0.0);
            let b = gaussian_sample(rng, n, scale, 0.0);
            Pair::Sampled(a, b)
        }
        6 => {
            // samples: same law twice
            let n = 20_000;
            let a = gaussian_sample(rng, n, 1.0, 0.0);
            let b = gaussian_sample(rng, n, 1.0, 0.0);
            Pair::Sampled(a, b)
        }
        _ => {
            // samples: shifted Gaussians
            let n = 20_000;
            let shift = 0.5 + rng.random::<f64>();
            let a = gaussian_sample(rng, n, 1.0, 0.0);
            let b = gaussian_sample(rng, n, 1.0, shift);
            Pair::Sampled(a, b)
        }
    }
}

#[test]
fn order_implication_properties() {
    let c = Criterion::begin("order-implication suite");
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let grid = GridSpec::default();
    let mut violations = Vec::new();

    for case in 0..100 {
        let pair = random_pair(&mut rng, case);
        let (a, b): (&dyn Dist, &dyn Dist) = match &pair {
            Pair::Exact(a, b) => (a, b),
            Pair::Sampled(a, b) => (a, b),
        };
        let tol = default_tolerance(a, b);
        let mean_tol = default_mean_tolerance(a, b);

        let st = check_st(a, b, &grid, tol);
        let icx = check_icx(a, b, &grid, tol);
        let cx = check_cx(a, b, mean_tol, &grid, tol);

        // st dominance integrates to stop-loss dominance
        if st.direction == Direction::ABelowB
            && !matches!(
                icx.direction,
                Direction::ABelowB | Direction::Indistinguishable
            )
        {
            violations.push(format!("case {case}: st ABelowB but icx {:?}", icx.direction));
        }
        // cx means equal means plus icx
        if cx.direction == Direction::ABelowB {
            if (a.mean() - b.mean()).abs() > mean_tol {
                violations.push(format!("case {case}: cx holds with unequal means"));
            }
            if !matches!(
                icx.direction,
                Direction::ABelowB | Direction::Indistinguishable
            ) {
                violations.push(format!("case {case}: cx holds without icx"));
            }
        }
        // antisymmetry: swapping the arguments flips the direction and
        // negates the margin exactly
        for (fwd, rev) in [
            (&st, &check_st(b, a, &grid, tol)),
            (&icx, &check_icx(b, a, &grid, tol)),
            (&cx, &check_cx(b, a, mean_tol, &grid, tol)),
        ] {
            if fwd.direction.flipped() != rev.direction
                || fwd.margin != -rev.margin
                || fwd.violation_a_below_b != rev.violation_b_below_a
            {
                violations.push(format!(
                    "case {case}: antisymmetry broken for {:?}",
                    fwd.relation
                ));
            }
            if !fwd.is_consistent() || !rev.is_consistent() {
                violations.push(format!("case {case}: inconsistent verdict"));
            }
        }
    }
    c.finish(
        violations.is_empty(),
        &format!("100 randomized pairs, violations: {violations:?}"),
        None,
    );
}

// --------------------------------------------------------------------------
// 5. Peakedness equivalences on symmetric pairs
// --------------------------------------------------------------------------

#[test]
fn peakedness_equivalence_suite() {
    let c = Criterion::begin("peakedness equivalences");
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let grid = GridSpec::default();
    let mut violations = Vec::new();

    for case in 0..50 {
        // symmetric pairs: exact discrete for the first half, continuous
        // samples for the second; ordered, identical, swapped-ordered and
        // crossing cases all appear
        let (a, b): (Box<dyn Dist>, Box<dyn Dist>) = if case < 25 {
            let base = random_symmetric_discrete(&mut rng);
            match case % 4 {
                0 => {
                    let b = base.scaled(1.25 + 0.5 * rng.random::<f64>());
                    (Box::new(base), Box::new(b))
                }
                1 => {
                    let b = base.scaled(1.25 + 0.5 * rng.random::<f64>());
                    (Box::new(b), Box::new(base))
                }
                2 => (Box::new(base.clone()), Box::new(base)),
                _ => {
                    let a = DiscreteDist::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
                    let b = DiscreteDist::new(vec![
                        (-1.8, 0.2),
                        (-0.4, 0.3),
                        (0.4, 0.3),
                        (1.8, 0.2),
                    ])
                    .unwrap();
                    (Box::new(a), Box::new(b))
                }
            }
        } else {
            let n = 50_000;
            match case % 3 {
                0 => {
                    let a = gaussian_sample(&mut rng, n, 1.0, 0.0);
                    let b = gaussian_sample(&mut rng, n, 1.5, 0.0);
                    (Box::new(a), Box::new(b))
                }
                1 => {
                    let a = gaussian_sample(&mut rng, n, 1.6, 0.0);
                    let b = gaussian_sample(&mut rng, n, 1.0, 0.0);
                    (Box::new(a), Box::new(b))
                }
                _ => {
                    let a = gaussian_sample(&mut rng, n, 1.0, 0.0);
                    let b = gaussian_sample(&mut rng, n, 1.0, 0.0);
                    (Box::new(a), Box::new(b))
                }
            }
        };

        let tol = default_tolerance(a.as_ref(), b.as_ref());
        let st_abs = check_st(a.abs().as_ref(), b.abs().as_ref(), &grid, tol);
        let st_sq = check_st(a.square().as_ref(), b.square().as_ref(), &grid, tol);
        // the signed-CDF gap is half the absolute-CDF gap for symmetric laws
        let cut = sign_changes(a.as_ref(), b.as_ref(), &grid, tol / 2.0);

        if st_abs.direction != st_sq.direction {
            violations.push(format!(
                "case {case}: |.| gives {:?} but squares give {:?}",
                st_abs.direction, st_sq.direction
            ));
        }
        let single_cut_ab = cut.count == 1 && cut.signs == vec![1, -1];
        let single_cut_ba = cut.count == 1 && cut.signs == vec![-1, 1];
        let cut_ok = match st_abs.direction {
            Direction::ABelowB => single_cut_ab,
            Direction::BBelowA => single_cut_ba,
            Direction::Indistinguishable => cut.count == 0,
            Direction::Incomparable => !single_cut_ab && !single_cut_ba,
        };
        if !cut_ok {
            violations.push(format!(
                "case {case}: st {:?} vs cut ({}, {:?})",
                st_abs.direction, cut.count, cut.signs
            ));
        }
    }
    c.finish(
        violations.is_empty(),
        &format!("50 symmetric pairs, violations: {violations:?}"),
        None,
    );
}

// --------------------------------------------------------------------------
// 6. Symmetrized-sum convexity probes
// --------------------------------------------------------------------------

fn random_convex_fn(rng: &mut ChaCha8Rng, allow_linear: bool) -> ScalarFn {
    let quad = 1.5 * rng.random::<f64>();
    let lin = if allow_linear {
        2.0 * rng.random::<f64>() - 1.0
    } else {
        0.0
    };
    let offset = rng.random::<f64>();
    let hinges: Vec<(f64, f64)> = (0..1 + (rng.random::<u64>() % 3) as usize)
        .map(|_| (1.5 * rng.random::<f64>(), 4.0 * rng.random::<f64>() - 2.0))
        .collect();
    Box::new(move |x: f64| {
        let mut v = quad * x * x + lin * x + offset;
        for &(w, k) in &hinges {
            v += w * (x - k).max(0.0);
        }
        v
    })
}

#[test]
fn symmetrization_convexity_probes() {
    let c = Criterion::begin("symmetrization convexity");
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let grid = even_grid(-2.0, 2.0, 41);
    let mut failures = Vec::new();
    let mut worst: f64 = f64::INFINITY;

    for case in 0..200 {
        let phi = random_convex_fn(&mut rng, true);
        let m = 1 + (rng.random::<u64>() % 6) as usize;
        // the inner functions must be nonnegative as well as convex
        let g: Vec<ScalarFn> = (0..m).map(|_| random_convex_fn(&mut rng, false)).collect();
        let a = 2.0 * rng.random::<f64>() - 1.0;
        let b = 2.0 * rng.random::<f64>() - 1.0;
        let h = symmetrize_h(&phi, a, b, &g, &grid).unwrap();
        let check = convexity_check(&h, 1e-9);
        worst = worst.min(check.worst_second_difference);
        if !check.pass {
            failures.push(format!(
                "case {case}: m={m}, worst second difference {}",
                check.worst_second_difference
            ));
        }
    }
    c.finish(
        failures.is_empty(),
        &format!("200 draws, most negative second difference {worst:.3e} (tol 1e-9); failures: {failures:?}"),
        None,
    );
}

// --------------------------------------------------------------------------
// 7. Kurtosis direction with a quadrature oracle
// --------------------------------------------------------------------------

/// Simpson integration of f over [lo, hi] with an even panel count.
fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (hi - lo) / n as f64;
    let mut total = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        total += w * f(lo + h * i as f64);
    }
    total * h / 3.0
}

/// E[X⁴] of a density via x = tan θ, which maps [0, ∞) to a finite strip
/// with a bounded integrand even for the slowly decaying t tail.
fn fourth_moment_quadrature(density: impl Fn(f64) -> f64) -> f64 {
    2.0 * simpson(
        |theta: f64| {
            let t = theta.tan();
            let sec2 = 1.0 + t * t;
            t.powi(4) * density(t) * sec2
        },
        0.0,
        std::f64::consts::FRAC_PI_2 - 1e-9,
        200_000,
    )
}

#[test]
fn kurtosis_direction() {
    let c = Criterion::begin("kurtosis direction");
    let n = 1_000_000;

    // quadrature oracle on the exact densities
    let gauss_m4 = fourth_moment_quadrature(garch_orders::math::normal_pdf);
    let s = (3.0f64 / 5.0).sqrt();
    let t5_coef = 8.0 / (3.0 * 5.0f64.sqrt() * std::f64::consts::PI);
    let t5_density = |x: f64| {
        let u = x / s;
        (t5_coef / s) * (1.0 + u * u / 5.0).powi(-3)
    };
    let t5_m4 = fourth_moment_quadrature(t5_density);
    assert!((gauss_m4 - 3.0).abs() < 1e-6, "oracle gauss {gauss_m4}");
    assert!((t5_m4 - 9.0).abs() < 1e-3, "oracle t5 {t5_m4}");

    // one pinned stream per family; the t(5) kurtosis estimator inherits
    // infinite asymptotic variance from the ε⁴ tail, so the band below is a
    // statement about this seed's draw, reproducible forever
    let gauss = InnovationSpec::standard_gaussian();
    let t5 = InnovationSpec::student_t(5.0).unwrap();
    let mut rng_g = ChaCha8Rng::seed_from_u64(708);
    let mut rng_t = ChaCha8Rng::seed_from_u64(712);
    let ga = EmpiricalDist::new(gauss.sample_many(&mut rng_g, n)).unwrap();
    let tb = EmpiricalDist::new(t5.sample_many(&mut rng_t, n)).unwrap();

    let icx = check_icx(
        ga.square().as_ref(),
        tb.square().as_ref(),
        &GridSpec::default(),
        default_tolerance(&ga, &tb),
    );
    let beta2_gauss = kurtosis_beta2(&ga).unwrap();
    let beta2_t5 = kurtosis_beta2(&tb).unwrap();

    let pass = icx.direction == Direction::ABelowB
        && (beta2_gauss - gauss_m4).abs() <= 0.05
        && (beta2_t5 - t5_m4).abs() <= 0.5;
    c.finish(
        pass,
        &format!(
            "icx(eps^2) {:?}; beta2 {beta2_gauss:.4} vs oracle {gauss_m4:.4} (band 0.05), {beta2_t5:.3} vs oracle {t5_m4:.3} (band 0.5)",
            icx.direction
        ),
        Some(Duration::from_secs(10)),
    );
}

// --------------------------------------------------------------------------
// 8. Determinism of emitted files across reruns and worker counts
// --------------------------------------------------------------------------

#[test]
fn output_determinism() {
    let c = Criterion::begin("output determinism");
    let run_into = |tag: &str, threads: Option<usize>| {
        let dir = tmp_dir(tag);
        let overrides = CliOverrides {
            seed: Some(42),
            paths: Some(30_000),
            out: Some(dir.clone()),
            allow_nonstationary: false,
        };
        let resolved = ResolvedConfig::resolve(None, &overrides).unwrap();
        match threads {
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .unwrap();
                pool.install(|| run_fig1(&resolved).unwrap());
            }
            None => {
                run_fig1(&resolved).unwrap();
            }
        }
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().to_string(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        files
    };

    let one = run_into("determinism_t1", Some(1));
    let eight = run_into("determinism_t8", Some(8));
    let rerun = run_into("determinism_rerun", None);

    let pass = one == eight && one == rerun && one.len() == 13;
    c.finish(
        pass,
        &format!(
            "{} files byte-compared across 1-thread, 8-thread and rerun outputs",
            one.len()
        ),
        None,
    );
}
