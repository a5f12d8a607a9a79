use std::f64::consts::{FRAC_PI_4, PI};

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spincorr_core::product::{embed_symmetric, pairwise_correlation_sums};
use spincorr_core::sweep::{run_sweep, SweepSpec};
use spincorr_core::{
    all_moments, correlation_triple, evolved_coherent, frame_angles, BlochAngles, EvolutionSpec,
};

fn evolved(n: usize, tau: f64) -> spincorr_core::DickeState {
    let spec = EvolutionSpec::new(n, BlochAngles::new(FRAC_PI_4, 0.0).unwrap(), tau).unwrap();
    evolved_coherent(&spec).unwrap()
}

fn correlation(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlation_triple");
    for n in [10usize, 100, 1000] {
        let state = evolved(n, PI / 6.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| correlation_triple(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn product_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairwise_correlation_sums");
    group.sample_size(10);
    for n in [6usize, 10, 14] {
        let state = evolved(n, PI / 3.0);
        let frame = frame_angles(&all_moments(&state), n);
        let embedded = embed_symmetric(&state).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &embedded, |b, p| {
            b.iter(|| pairwise_correlation_sums(black_box(p), &frame).unwrap())
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let table = SweepSpec::default_table();
    c.bench_function("table default", |b| {
        b.iter(|| run_sweep(black_box(&table), 1).unwrap())
    });

    let sweep_n = SweepSpec::SweepN {
        n_start: 2,
        n_end: 100,
        theta: FRAC_PI_4,
        phi: 0.0,
        taus: vec![PI / 8.0, PI / 6.0, PI / 4.0],
    };
    let mut group = c.benchmark_group("sweep-n 2..100");
    group.sample_size(10);
    for threads in [1usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| run_sweep(&sweep_n, t).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, correlation, product_oracle, sweeps);
criterion_main!(benches);
