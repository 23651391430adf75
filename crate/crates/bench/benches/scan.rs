use std::hint::black_box;

use ballmaps_bench::small_catalog;
use ballmaps_core::{scan, ClassifyOptions, Compactness, ScanFilter, ScanStage};
use criterion::{criterion_group, criterion_main, Criterion};

fn scans(c: &mut Criterion) {
    let catalog = small_catalog();
    let opts = ClassifyOptions::default();
    let mut group = c.benchmark_group("scan");
    group.sample_size(20);
    for (name, compactness, stage) in [
        ("cocompact-divisibility", Compactness::Cocompact, ScanStage::Divisibility),
        ("cocompact-full", Compactness::Cocompact, ScanStage::Full),
        ("noncompact-divisibility", Compactness::NonCompact, ScanStage::Divisibility),
    ] {
        let filter = ScanFilter { compactness, stage, ..ScanFilter::default() };
        group.bench_function(name, |b| b.iter(|| scan(black_box(&catalog), black_box(&catalog), &filter, &opts)));
    }
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
