use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vcat_bench::{boolean, random_graph, tropical};
use vcat_core::free_category;

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_category");
    for (label, q) in [("boolean", boolean()), ("tropical31", tropical(31))] {
        for n in [8, 16, 32] {
            let g = random_graph(&q, n, 0.15, n as u64);
            group.bench_with_input(BenchmarkId::new(label, n), &g, |b, g| {
                b.iter(|| free_category(black_box(g)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closure);
criterion_main!(benches);
