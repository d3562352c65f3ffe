use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use forestry::{
    find_bad_pair, forest_polynomial, schubert, schubert_divdiff, verify_theorem, IndexedForest, VerifyConfig,
};
use forestry_bench::sample_permutations;

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomials");
    for w in sample_permutations() {
        let forest = IndexedForest::from_code(&w.lehmer_code());
        group.bench_with_input(BenchmarkId::new("schubert", &w), &w, |b, w| {
            b.iter(|| schubert(black_box(w)))
        });
        group.bench_with_input(BenchmarkId::new("divided_differences", &w), &w, |b, w| {
            b.iter(|| schubert_divdiff(black_box(w)))
        });
        group.bench_with_input(BenchmarkId::new("forest", &w), &forest, |b, f| {
            b.iter(|| forest_polynomial(black_box(f)))
        });
    }
    group.finish();
}

fn bad_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_bad_pair");
    for w in sample_permutations() {
        group.bench_with_input(BenchmarkId::from_parameter(&w), &w, |b, w| {
            b.iter(|| find_bad_pair(black_box(w)))
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for n in [4, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| verify_theorem(n, &VerifyConfig::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, polynomials, bad_pairs, verification);
criterion_main!(benches);
