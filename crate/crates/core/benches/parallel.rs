//! Sequential vs rayon execution of the two data-parallel entry points:
//! the all-cuts report and the multi-restart search. Without the `parallel`
//! feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gconc::random::{random_state, seeded};
use gconc::{
    global_report_with, maximize, Execution, QuditDims, Route, SearchConfig, DEFAULT_SEP_EPSILON,
};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn global_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("global_report");
    for n in [6, 8, 10] {
        let state = random_state(&QuditDims::uniform(n, 2).unwrap(), &mut seeded(3));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &state, |b, s| {
                b.iter(|| {
                    black_box(
                        global_report_with(s, Route::Trace, DEFAULT_SEP_EPSILON, exec).unwrap(),
                    )
                })
            });
        }
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_2x2x2");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut config = SearchConfig::new(QuditDims::uniform(3, 2).unwrap(), 7);
        config.restarts = 8;
        config.iters_per_restart = 500;
        config.exec = exec;
        group.bench_function(name, |b| {
            b.iter(|| black_box(maximize(&config).unwrap().best_report.global_e))
        });
    }
    group.finish();
}

criterion_group!(benches, global_report, search);
criterion_main!(benches);
