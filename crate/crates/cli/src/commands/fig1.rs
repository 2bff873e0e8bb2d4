//! Baseline-vs-variants experiment on the distribution of the logreturn
//! sum: GARCH(1,1) with all weights at 0.2, against the three one-at-a-time
//! bumps to 0.5 (named A0, A1, B1 after the bumped weight), Gaussian
//! innovations, 50 steps. Emits per-variant sum samples, comparable density
//! curves, stop-loss curves and convex-order verdicts against the baseline.

use garch_orders::garch::{simulate_paths, InitialStateSpec, InnovationSpec, RecursionMap};
use garch_orders::orders::{
    check_cx, default_mean_tolerance, default_tolerance, kernel_density, silverman_bandwidth,
    Dist, EmpiricalDist, GridSpec,
};

use crate::config::{ModelKind, ParamsConfig, ResolvedConfig};
use crate::error::CliError;
use crate::output::{curve_csv, OutputDir};
use crate::report::{summarize, ExperimentReport, NamedVerdict};

pub const FIG1_N_STEPS: usize = 50;

pub struct Fig1Run {
    pub report: ExperimentReport,
    /// (variant name, sum sample); baseline first.
    pub variant_sums: Vec<(String, Vec<f64>)>,
}

fn fig1_variants() -> Vec<(String, ParamsConfig)> {
    let base = ParamsConfig {
        alpha0: 0.2,
        alpha1: 0.2,
        beta1: 0.2,
    };
    vec![
        ("baseline".to_string(), base),
        ("A0".to_string(), ParamsConfig { alpha0: 0.5, ..base }),
        ("A1".to_string(), ParamsConfig { alpha1: 0.5, ..base }),
        ("B1".to_string(), ParamsConfig { beta1: 0.5, ..base }),
    ]
}

pub fn run_fig1(resolved: &ResolvedConfig) -> Result<Fig1Run, CliError> {
    if resolved.model != ModelKind::Garch11 {
        return Err(CliError::config(
            "the fig1 experiment is defined for model garch11",
        ));
    }
    resolved.require_statistical_paths()?;
    let seed = resolved.seed;
    let seed_tag = seed.to_string();
    let innovations = InnovationSpec::standard_gaussian();
    let init = InitialStateSpec::HalfGaussian { scale: 1.0 };
    let mut out = OutputDir::create(&resolved.out_dir)?;
    let mut report = ExperimentReport::new("fig1", seed);

    // all variants share the seed, so they also share innovations
    // path-for-path; paired noise sharpens every comparison below
    let mut variant_sums: Vec<(String, Vec<f64>)> = Vec::new();
    for (name, pc) in fig1_variants() {
        let params = pc.build(false)?;
        let recursion = RecursionMap::garch11(params);
        let batch = simulate_paths(
            &recursion,
            &innovations,
            &init,
            FIG1_N_STEPS,
            resolved.n_paths,
            seed,
        )?;
        out.write(
            &OutputDir::file_name("fig1-samples", &name, &seed_tag, "csv"),
            &batch.to_csv(),
        )?;
        let sums = batch.logreturn_sums();
        report.variants.push(summarize(&name, &sums));
        variant_sums.push((name, sums));
    }

    // one bandwidth and one grid across the whole figure so the curves are
    // directly comparable
    let pooled: Vec<f64> = variant_sums
        .iter()
        .flat_map(|(_, s)| s.iter().copied())
        .collect();
    let bandwidth = silverman_bandwidth(&pooled);
    let lo = pooled.iter().cloned().fold(f64::INFINITY, f64::min) - 3.0 * bandwidth;
    let hi = pooled.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 3.0 * bandwidth;
    let density_points = 512;

    let mut stoploss_grid: Vec<f64> = {
        let sorted = {
            let mut p = pooled;
            p.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            p
        };
        (0..512)
            .map(|i| sorted[(i * (sorted.len() - 1)) / 511])
            .collect()
    };
    stoploss_grid.dedup();

    let dists: Vec<(String, EmpiricalDist)> = variant_sums
        .iter()
        .map(|(name, sums)| Ok((name.clone(), EmpiricalDist::new(sums.clone())?)))
        .collect::<Result<_, CliError>>()?;

    let base_density = kernel_density(dists[0].1.sample(), bandwidth, (lo, hi), density_points);
    let base_stoploss: Vec<f64> = stoploss_grid.iter().map(|&k| dists[0].1.stop_loss(k)).collect();

    for (name, dist) in &dists {
        let density = kernel_density(dist.sample(), bandwidth, (lo, hi), density_points);
        out.write(
            &OutputDir::file_name("fig1-density", name, &seed_tag, "csv"),
            &curve_csv(&density.grid, &base_density.density, &density.density),
        )?;
        let stoploss: Vec<f64> = stoploss_grid.iter().map(|&k| dist.stop_loss(k)).collect();
        out.write(
            &OutputDir::file_name("fig1-stoploss", name, &seed_tag, "csv"),
            &curve_csv(&stoploss_grid, &base_stoploss, &stoploss),
        )?;
        if name != "baseline" {
            let verdict = check_cx(
                &dists[0].1,
                dist,
                default_mean_tolerance(&dists[0].1, dist),
                &GridSpec::default(),
                default_tolerance(&dists[0].1, dist),
            );
            report.verdicts.push(NamedVerdict {
                name: format!("cx_sum_baseline_vs_{name}"),
                verdict,
            });
        }
    }
    report
        .notes
        .push(format!("kde_bandwidth = {bandwidth} (pooled Silverman)"));
    report.notes.push(format!("n_steps = {FIG1_N_STEPS}"));

    let report_name = OutputDir::file_name("fig1", "report", &seed_tag, "json");
    let report = out.finish(report, &report_name)?;
    Ok(Fig1Run {
        report,
        variant_sums,
    })
}
