//! Batched normalization: sequential versus data-parallel.

use artin_core::exec::{self, Execution};
use artin_core::{CoxeterGraph, GarsideGroup, GeneratorWord};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// Deterministic pseudo-random signed words; a fixed LCG keeps runs comparable.
fn corpus(rank: usize, count: usize, len: usize) -> Vec<GeneratorWord> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..count)
        .map(|_| {
            let letters: Vec<i64> = (0..len)
                .map(|_| {
                    state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                    let g = ((state >> 33) % rank as u64) as i64 + 1;
                    if (state >> 17) & 1 == 0 { g } else { -g }
                })
                .collect();
            GeneratorWord::from_signed(&letters)
        })
        .collect()
}

fn batched_normalization(c: &mut Criterion) {
    for name in ["E6", "E8"] {
        let g = GarsideGroup::new(CoxeterGraph::named(name).unwrap());
        let words = corpus(g.rank(), 256, 48);
        let mut group = c.benchmark_group(format!("normalize_{name}"));
        for mode in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &words, |b, words| {
                b.iter(|| exec::map(mode, words, |w| g.normalize(w).unwrap()))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, batched_normalization);
criterion_main!(benches);
