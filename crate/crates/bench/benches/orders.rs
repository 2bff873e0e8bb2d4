use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use garch_orders::math::normal_quantile;
use garch_orders::orders::{
    check_icx, check_st, silverman_bandwidth, kernel_density, Dist, EmpiricalDist, GridSpec,
};

fn samples(n: usize, scale: f64, seed: u64) -> EmpiricalDist {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EmpiricalDist::new(
        (0..n)
            .map(|_| scale * normal_quantile(rng.random::<f64>().max(1e-300)))
            .collect(),
    )
    .unwrap()
}

fn bench_checks(c: &mut Criterion) {
    let a = samples(100_000, 1.0, 1);
    let b = samples(100_000, 1.4, 2);
    let grid = GridSpec::default();
    c.bench_function("check_st_100k", |bch| {
        bch.iter(|| check_st(black_box(&a), black_box(&b), &grid, 0.01))
    });
    c.bench_function("check_icx_100k", |bch| {
        bch.iter(|| check_icx(black_box(&a), black_box(&b), &grid, 0.01))
    });
    c.bench_function("stop_loss_query_100k", |bch| {
        bch.iter(|| {
            let mut acc = 0.0;
            for i in 0..512 {
                acc += a.stop_loss(-3.0 + i as f64 * 0.0125);
            }
            acc
        })
    });
}

fn bench_kde(c: &mut Criterion) {
    let a = samples(100_000, 1.0, 3);
    let h = silverman_bandwidth(a.sample());
    c.bench_function("kde_100k_512pts", |bch| {
        bch.iter(|| kernel_density(a.sample(), h, (-5.0, 5.0), 512))
    });
}

criterion_group!(benches, bench_checks, bench_kde);
criterion_main!(benches);
