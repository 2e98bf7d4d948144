use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hsys_core::checks::sampling::{random_bump, random_params, rng};
use hsys_core::checks::{interpolation_check, Tolerances};
use hsys_core::coupling::minimize_g;
use hsys_core::exec::Execution;
use hsys_core::params::SystemParams;
use hsys_core::radial::{make_grid, RadialProfile};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn configs(n: usize) -> Vec<SystemParams> {
    let mut r = rng(1);
    (0..n).map(|_| random_params(&mut r, (0.05, 3.0))).collect()
}

fn bench_minimize(c: &mut Criterion) {
    let params = configs(256);
    let mut group = c.benchmark_group("minimize_g");
    for (name, ex) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, params.len()), &params, |b, ps| {
            b.iter(|| {
                ex.map(ps, |p| {
                    minimize_g(black_box(p))
                        .map(|m| m.g_min)
                        .unwrap_or(f64::NAN)
                })
            })
        });
    }
    group.finish();
}

fn bench_interpolation(c: &mut Criterion) {
    let grid = Arc::new(make_grid(1e-6, 1e6, 1024).unwrap());
    let mut r = rng(2);
    let profiles: Vec<RadialProfile> = (0..512)
        .map(|_| random_bump(&grid, &mut r).unwrap())
        .collect();
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("interpolation_check");
    for (name, ex) in STRATEGIES {
        group.bench_with_input(
            BenchmarkId::new(name, profiles.len()),
            &profiles,
            |b, us| {
                b.iter(|| {
                    ex.map(us, |u| {
                        interpolation_check(black_box(u), 3, 0.2, 1.0, 1.7, &tol)
                            .map(|c| c.pass)
                            .unwrap_or(false)
                    })
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_minimize, bench_interpolation);
criterion_main!(benches);
