use std::hint::black_box;

use ballmaps_core::{enumerate_catalog, IntegralityMode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (k, den) in [(4, 84), (5, 42), (6, 42), (8, 42)] {
        group.bench_with_input(BenchmarkId::new(format!("k{k}"), den), &(k, den), |b, &(k, den)| {
            b.iter(|| enumerate_catalog(black_box(k), black_box(den), IntegralityMode::HalfInt))
        });
    }
    group.finish();
}

criterion_group!(benches, enumerate);
criterion_main!(benches);
