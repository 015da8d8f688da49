//! Sequential against rayon trial fan-out. Build with
//! `--no-default-features` to see the fallback alone.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use meancycle::analytic::Objective;
use meancycle::experiments::{run_trials, ExperimentConfig};
use meancycle::instances::sample_complete;
use meancycle::par;
use meancycle::rng::derive_seed;
use meancycle::solvers::light_search;
use meancycle::Orientation;

fn one_trial(n: usize, o: Orientation, t: usize) -> f64 {
    let g = sample_complete(n, o, derive_seed(1, t as u64)).unwrap();
    light_search(&g).unwrap().min_mean
}

fn fanout(c: &mut Criterion) {
    let mut group = c.benchmark_group("trials");
    group.sample_size(10);
    for &n in &[100usize, 300] {
        let count = 16;
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| {
                par::map_indexed_sequential(count, |t| one_trial(n, Orientation::Directed, t))
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| {
                par::map_indexed_parallel(count, 0, |t| one_trial(n, Orientation::Directed, t))
            })
        });
    }
    group.finish();
}

fn experiment(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_trials");
    group.sample_size(10);
    for &workers in &[1usize, 0] {
        let mut cfg = ExperimentConfig::new(200, 16, Orientation::Undirected, Objective::Mean);
        cfg.workers = workers;
        let label = if workers == 1 {
            "one_worker"
        } else {
            "all_workers"
        };
        group.bench_function(label, |b| b.iter(|| run_trials(&cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, fanout, experiment);
criterion_main!(benches);
