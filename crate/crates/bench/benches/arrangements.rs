use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use depcross::extremal::{d_min, d_min_noncrossing};
use depcross::predictors::e1_crossings;
use depcross::{count_crossings, PermutationEnsemble};
use depcross_bench::{caterpillar, interleaved};
use std::hint::black_box;

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_ensemble");
    group.sample_size(10);
    for n in [7, 8, 9] {
        let tree = caterpillar(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, t| {
            b.iter(|| PermutationEnsemble::exhaustive(black_box(t), 12).unwrap())
        });
    }
    group.finish();
}

fn sampled(c: &mut Criterion) {
    let tree = caterpillar(25);
    c.bench_function("sampled_ensemble_25_x100k", |b| {
        b.iter(|| PermutationEnsemble::sampled(black_box(&tree), 100_000, 7).unwrap())
    });
}

fn extremes(c: &mut Criterion) {
    let mut group = c.benchmark_group("d_min_exact");
    group.sample_size(10);
    for n in [12, 16] {
        let tree = caterpillar(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, t| b.iter(|| d_min(black_box(t)).unwrap()));
    }
    group.finish();
    let big = caterpillar(400);
    c.bench_function("d_min_noncrossing_400", |b| b.iter(|| d_min_noncrossing(black_box(&big))));
}

fn observed(c: &mut Criterion) {
    let tree = caterpillar(60);
    let arr = interleaved(60);
    c.bench_function("count_crossings_60", |b| b.iter(|| count_crossings(black_box(&arr), &tree).unwrap()));
    c.bench_function("e1_crossings_60", |b| b.iter(|| e1_crossings(black_box(&tree), &arr).unwrap()));
}

criterion_group!(benches, exhaustive, sampled, extremes, observed);
criterion_main!(benches);
