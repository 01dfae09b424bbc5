//! Wall-clock comparison of the length-sweep work under both execution
//! modes. Run `cargo bench` for the parallel numbers and
//! `cargo bench --no-default-features` for the sequential baseline; the
//! benchmark ids carry the active mode so reports from both runs can sit
//! side by side.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use infoseries::{anatomy, block_curve, noisy_random_phase_slip, BlockMeasure};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_entropy_curve(c: &mut Criterion) {
    let machine = noisy_random_phase_slip();
    let mut group = c.benchmark_group("entropy_curve");
    for max_len in [10usize, 14] {
        group.bench_with_input(
            BenchmarkId::new(mode(), max_len),
            &max_len,
            |b, &max_len| {
                b.iter(|| block_curve(&machine, BlockMeasure::Entropy, max_len).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_coinformation_curve(c: &mut Criterion) {
    let machine = noisy_random_phase_slip();
    let mut group = c.benchmark_group("coinformation_curve");
    group.sample_size(20);
    for max_len in [8usize, 11] {
        group.bench_with_input(
            BenchmarkId::new(mode(), max_len),
            &max_len,
            |b, &max_len| {
                b.iter(|| {
                    block_curve(&machine, BlockMeasure::CoInformation, max_len).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_anatomy(c: &mut Criterion) {
    let machine = noisy_random_phase_slip();
    let mut group = c.benchmark_group("anatomy");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new(mode(), 8), |b| {
        b.iter(|| anatomy(&machine, 8).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_entropy_curve,
    bench_coinformation_curve,
    bench_anatomy
);
criterion_main!(benches);
