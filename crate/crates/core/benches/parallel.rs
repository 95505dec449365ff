//! Sequential versus rayon-parallel timings for the per-prime loops.
//!
//! The sequential path is a one-thread pool, which takes the same code path
//! as a build with `--no-default-features`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zf_core::elliptic::{self, PointConvention};
use zf_core::par::with_threads;
use zf_core::prime_zeta::inclusion_exclusion_p;
use zf_core::primes;
use zf_core::ComplexValue;

fn modes() -> [(&'static str, usize); 2] {
    [("sequential", 1), ("parallel", 0)]
}

fn local_data(c: &mut Criterion) {
    let table = primes::sieve(50_000).unwrap();
    let curve = &elliptic::fixtures()[3];
    let mut group = c.benchmark_group("local_data_50k");
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                with_threads(threads, || {
                    elliptic::local_data_for(curve, black_box(table.primes())).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn bsd(c: &mut Criterion) {
    let table = primes::sieve(20_000).unwrap();
    let curve = &elliptic::fixtures()[1];
    let mut group = c.benchmark_group("bsd_product_20k");
    group.sample_size(20);
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                with_threads(threads, || {
                    elliptic::bsd_product(
                        curve,
                        black_box(20_000),
                        &table,
                        PointConvention::Projective,
                    )
                    .unwrap()
                })
            })
        });
    }
    group.finish();
}

fn inclusion_exclusion(c: &mut Criterion) {
    let z = ComplexValue::new(2.0, 0.0);
    let mut group = c.benchmark_group("inclusion_exclusion_100_3");
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                with_threads(threads, || {
                    inclusion_exclusion_p(black_box(z), 100, 3).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn rational_points(c: &mut Criterion) {
    let curve = &elliptic::fixtures()[1];
    let mut group = c.benchmark_group("rational_points_200");
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                with_threads(threads, || {
                    elliptic::count_rational_points(curve, black_box(200)).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    local_data,
    bsd,
    inclusion_exclusion,
    rational_points
);
criterion_main!(benches);
