//! Compares the rayon-backed sweeps against hand-rolled sequential loops
//! doing identical work. With the default `parallel` feature the library
//! paths fan out over the thread pool; built with --no-default-features
//! they degrade to the same sequential shape as the baselines here.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ghz4sym::boundaries::{alphas_from_yz, effective_xmax, xmax_labc2};
use ghz4sym::oracle::{maximize_x, OptimConfig};
use ghz4sym::region::{sample_surface, yz_grid};
use ghz4sym::slocc::SloccClass;

fn surface_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("surface_sweep_la4_n48");
    group.sample_size(10);
    group.bench_function("library", |b| {
        b.iter(|| black_box(sample_surface(SloccClass::La4, black_box(48)).unwrap()))
    });
    group.bench_function("sequential", |b| {
        let grid = yz_grid(48);
        b.iter(|| {
            let mut acc = 0.0f64;
            for &(y, z) in &grid {
                let r = effective_xmax(SloccClass::La4, y, z).unwrap();
                if !r.empty {
                    acc += r.x_effective;
                }
            }
            black_box(acc)
        })
    });
    group.finish();
}

fn quartic_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("surface_sweep_labc2_n48");
    group.sample_size(10);
    group.bench_function("library", |b| {
        b.iter(|| black_box(sample_surface(SloccClass::Labc2, black_box(48)).unwrap()))
    });
    group.bench_function("sequential", |b| {
        let grid = yz_grid(48);
        b.iter(|| {
            let mut acc = 0.0f64;
            for &(y, z) in &grid {
                let (a1, a2, _) = alphas_from_yz(y, z);
                let r = xmax_labc2(a1, a2);
                if !r.empty {
                    acc += r.x_max;
                }
            }
            black_box(acc)
        })
    });
    group.finish();
}

fn oracle_restarts(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_la2b2_8_restarts");
    group.sample_size(10);
    let (y, z) = (0.12, 0.01);
    let base = OptimConfig {
        restarts: 8,
        max_iters: 60,
        penalty_weight_schedule: vec![1e2, 1e4],
        step_tolerance: 1e-10,
        seed: 7,
    };
    group.bench_function("library", |b| {
        b.iter(|| black_box(maximize_x(SloccClass::La2b2, y, z, &base).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            // One restart per call, seeds matching the batched run.
            let mut best = f64::NEG_INFINITY;
            for i in 0..8u64 {
                let cfg = OptimConfig {
                    restarts: 1,
                    seed: base.seed + i,
                    ..base.clone()
                };
                let r = maximize_x(SloccClass::La2b2, y, z, &cfg).unwrap();
                best = best.max(r.x_best);
            }
            black_box(best)
        })
    });
    group.finish();
}

criterion_group!(benches, surface_sweep, quartic_sweep, oracle_restarts);
criterion_main!(benches);
