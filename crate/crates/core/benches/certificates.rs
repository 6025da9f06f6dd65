//! Certificate pipelines: sequential versus data-parallel.

use artin_core::catalog::Symbol;
use artin_core::certificate::{self, Context, Settings};
use artin_core::exec::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn context(mode: Execution) -> Context {
    Context::resolve(Settings { mode, timings: false }).unwrap()
}

fn pipelines(c: &mut Criterion) {
    let w = certificate::catalog_expr(Symbol::W);
    let mut torsion = c.benchmark_group("torsion");
    for mode in [Execution::Sequential, Execution::Parallel] {
        let ctx = context(mode);
        torsion.bench_function(BenchmarkId::from_parameter(format!("{mode:?}")), |b| {
            b.iter(|| certificate::verify_torsion(&ctx, 6, &w).unwrap())
        });
    }
    torsion.finish();

    let mut free = c.benchmark_group("freeness_scan");
    free.sample_size(10);
    for mode in [Execution::Sequential, Execution::Parallel] {
        let ctx = context(mode);
        free.bench_function(BenchmarkId::from_parameter(format!("{mode:?}")), |b| {
            b.iter(|| certificate::freeness_certificate(&ctx, 1..=2, 4).unwrap())
        });
    }
    free.finish();
}

criterion_group!(benches, pipelines);
criterion_main!(benches);
