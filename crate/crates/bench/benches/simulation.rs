use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use garch_orders::garch::{closed_form_variance, simulate_paths, InitialStateSpec};
use garch_orders::oracle::ExactPathTree;
use garch_orders::orders::DiscreteDist;
use garch_orders_bench::{bench_innovations, bench_params, bench_recursion};

fn bench_simulate_paths(c: &mut Criterion) {
    let recursion = bench_recursion();
    let innovations = bench_innovations();
    let init = InitialStateSpec::HalfGaussian { scale: 1.0 };
    let mut group = c.benchmark_group("simulate_paths");
    for paths in [1_000usize, 10_000] {
        group.bench_function(format!("{paths}x50"), |b| {
            b.iter(|| {
                simulate_paths(&recursion, &innovations, &init, 50, paths, 42).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_closed_form(c: &mut Criterion) {
    let params = bench_params();
    let eps_sq: Vec<f64> = (0..100).map(|i| 0.5 + (i as f64 * 0.37).sin().abs()).collect();
    c.bench_function("closed_form_variance_n100", |b| {
        b.iter(|| closed_form_variance(&params, black_box(1.0), black_box(&eps_sq)).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let law = DiscreteDist::new(vec![(-1.0, 0.25), (0.0, 0.5), (1.0, 0.25)]).unwrap();
    let tree = ExactPathTree::iid(bench_recursion(), 1.0, law, 8).unwrap();
    c.bench_function("enumerate_3pt_depth8", |b| {
        b.iter_batched(
            || tree.clone(),
            |t| t.enumerate().unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("marginal_sum_3pt_depth8", |b| {
        b.iter(|| tree.marginal_sum().unwrap())
    });
}

criterion_group!(
    benches,
    bench_simulate_paths,
    bench_closed_form,
    bench_enumeration
);
criterion_main!(benches);
