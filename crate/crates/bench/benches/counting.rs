use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wdc_bench::{affine, divisor_pair, divisor_pair_float, hermite_triple};
use wdc_core::lattice::{
    count_hyperbola2, count_naive, count_recursive, dirichlet_divisor, DEFAULT_BUDGET,
};

fn divisor_methods(c: &mut Criterion) {
    let spec = divisor_pair();
    let float = divisor_pair_float();
    let id = affine(1.0, 1.0, 1.0);
    let mut group = c.benchmark_group("divisor");
    for lambda in [1e4, 1e6] {
        group.bench_with_input(BenchmarkId::new("naive", lambda), &lambda, |b, &l| {
            b.iter(|| count_naive(&spec, black_box(l), DEFAULT_BUDGET).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("recursive", lambda), &lambda, |b, &l| {
            b.iter(|| count_recursive(&spec, black_box(l)).unwrap())
        });
        group.bench_with_input(
            BenchmarkId::new("recursive_float", lambda),
            &lambda,
            |b, &l| b.iter(|| count_recursive(&float, black_box(l)).unwrap()),
        );
        group.bench_with_input(BenchmarkId::new("hyperbola", lambda), &lambda, |b, &l| {
            b.iter(|| count_hyperbola2(&id, &id, black_box(l)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dirichlet", lambda), &lambda, |b, &l| {
            b.iter(|| dirichlet_divisor(black_box(l)).unwrap())
        });
    }
    group.finish();
}

fn three_factors(c: &mut Criterion) {
    let spec = hermite_triple();
    c.bench_function("hermite_triple/recursive/1e6", |b| {
        b.iter(|| count_recursive(&spec, black_box(1e6)).unwrap())
    });
    c.bench_function("hermite_triple/naive/1e6", |b| {
        b.iter(|| count_naive(&spec, black_box(1e6), DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, divisor_methods, three_factors);
criterion_main!(benches);
