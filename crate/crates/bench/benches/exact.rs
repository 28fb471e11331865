use criterion::{criterion_group, criterion_main, Criterion};
use freeact_bench::{block_matrix, torus_map};
use freeact_core::exact::{hnf, snf, RationalMatrix};
use freeact_core::torus::has_fixed_point;
use std::hint::black_box;

fn normal_forms(c: &mut Criterion) {
    let d = &block_matrix() - &RationalMatrix::identity(6);
    c.bench_function("snf 6x6", |b| b.iter(|| snf(black_box(&d)).unwrap()));
    c.bench_function("hnf 6x6", |b| b.iter(|| hnf(black_box(&d)).unwrap()));
}

fn fixed_points(c: &mut Criterion) {
    let fixed = torus_map(&[(1, 3), (2, 7), (0, 1), (0, 1), (0, 1), (0, 1)]);
    let free = torus_map(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 3)]);
    assert!(!has_fixed_point(&fixed).is_free());
    assert!(has_fixed_point(&free).is_free());
    c.bench_function("has_fixed_point fixed 6d", |b| b.iter(|| has_fixed_point(black_box(&fixed))));
    c.bench_function("has_fixed_point free 6d", |b| b.iter(|| has_fixed_point(black_box(&free))));
}

criterion_group!(benches, normal_forms, fixed_points);
criterion_main!(benches);
