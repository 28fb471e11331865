use criterion::{criterion_group, criterion_main, Criterion};
use freeact_bench::lifted_pair;
use freeact_core::constructions::{search_affine_deformation, verify_certificate, AnyCertificate};
use freeact_core::SearchConfig;
use std::hint::black_box;

fn config() -> SearchConfig {
    SearchConfig { word_bound: 4, denominator_bound: 8, budget: 10_000, seed: 1, ..SearchConfig::default() }
}

fn search(c: &mut Criterion) {
    let [a, b] = lifted_pair();
    let mut group = c.benchmark_group("deformation");
    group.sample_size(10);
    group.bench_function("search lifted pair", |bn| {
        bn.iter(|| search_affine_deformation(black_box(&a), black_box(&b), &config()).unwrap())
    });
    let report = search_affine_deformation(&a, &b, &config()).unwrap();
    let cert = AnyCertificate::Freeness(Box::new(report.certificate().unwrap().clone()));
    group.bench_function("verify certificate", |bn| bn.iter(|| verify_certificate(black_box(&cert)).unwrap()));
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
