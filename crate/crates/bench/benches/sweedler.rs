use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vcat_bench::{boolean, random_category, tropical};
use vcat_core::sweedler_hom;

fn sweedler(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweedler_hom");
    for (label, q) in [("boolean", boolean()), ("tropical7", tropical(7))] {
        // |Y^X| = 3^2, 3^3, 4^3
        for (nx, ny) in [(2, 3), (3, 3), (3, 4)] {
            let a = random_category(&q, nx, 1);
            let b = random_category(&q, ny, 2);
            group.bench_with_input(
                BenchmarkId::new(label, format!("{nx}x{ny}")),
                &(a, b),
                |bench, (a, b)| {
                    bench.iter(|| {
                        sweedler_hom(black_box(a), black_box(b), 4096).expect("within cap")
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, sweedler);
criterion_main!(benches);
