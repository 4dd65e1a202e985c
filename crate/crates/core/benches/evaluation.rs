//! Sequential against rayon-parallel evaluation of the three bulk workloads:
//! a trajectory ensemble, a current time series and a density grid.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dit_core::arrival::current_series;
use dit_core::bohmian::{ensemble, EnsembleSpec, IntegratorOptions, SamplingMode};
use dit_core::exec::Execution;
use dit_core::observables::density;
use dit_core::{GridSpec, InitialState, Scenario, Wavefunction};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_ensemble(c: &mut Criterion) {
    let mut s = Scenario::with_state(InitialState::Eigenstate { n: 7 });
    s.t_count = 201;
    let spec = EnsembleSpec {
        count: 16,
        seed: 1,
        mode: SamplingMode::Quantile,
        t_end: 0.02,
        options: IntegratorOptions {
            tol: 1e-7,
            ..Default::default()
        },
    };
    let mut group = c.benchmark_group("ensemble_n7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ensemble(black_box(&s), &spec, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_current(c: &mut Criterion) {
    let s = Scenario::with_state(InitialState::Eigenstate { n: 50 });
    let times = GridSpec::new(1e-6, 0.6, 20_001).points();
    let mut group = c.benchmark_group("current_series_n50");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| current_series(black_box(&s), 2.0, &times, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_density(c: &mut Criterion) {
    let s = Scenario::with_state(InitialState::TruncatedGaussian { x0: 0.5, sigma0: 0.25 });
    let wf = Wavefunction::new(&s);
    let xs = GridSpec::new(-1.0, 2.0, 2001).points();
    let times = [0.03, 0.06, 0.09, 0.12, 0.15];
    let mut group = c.benchmark_group("density_grid_gaussian");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map(&xs, |&x| times.iter().map(|&t| density(&wf.sample(x, t).unwrap())).sum::<f64>())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_ensemble, bench_current, bench_density);
criterion_main!(benches);
