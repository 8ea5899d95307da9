//! Sequential vs rayon executors on representative verification sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rmoments::verify::{self, CheckResult, VerifyConfig};
use rmoments::Executor;

type Check = fn(&VerifyConfig) -> CheckResult;

fn config(executor: Executor) -> VerifyConfig {
    VerifyConfig {
        dim_max: 4,
        n_max: 8,
        p_min: -6,
        p_max: 8,
        hydrogen_n_max: 5,
        executor,
        ..VerifyConfig::default()
    }
}

fn sweeps(c: &mut Criterion) {
    let checks: [(&str, Check); 4] = [
        ("route", verify::check_route_agreement),
        ("oracle", verify::check_oracle_agreement),
        ("recurrence", verify::check_recurrence),
        ("j-integral", verify::check_j_integral),
    ];
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, check) in checks {
        for executor in [Executor::Sequential, Executor::Parallel] {
            let cfg = config(executor);
            group.bench_with_input(BenchmarkId::new(name, format!("{executor:?}")), &cfg, |b, cfg| {
                b.iter(|| black_box(check(cfg)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
