use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use secohom_core::algebra::{truncated_polynomial_algebra, Triple};
use secohom_core::complex::SecondaryComplex;
use secohom_core::{Field, Strategy};

fn coboundary_assembly(c: &mut Criterion) {
    let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
    let triple = Triple::with_identity(a).unwrap();
    let mut group = c.benchmark_group("coboundary_assembly");
    group.sample_size(10);
    for n in [2usize, 3] {
        for (name, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |bench, &n| {
                bench.iter(|| {
                    let cx = SecondaryComplex::regular(triple.clone()).with_strategy(strategy);
                    cx.coboundary_matrix(n).unwrap().nnz()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, coboundary_assembly);
criterion_main!(benches);
