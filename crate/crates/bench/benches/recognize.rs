use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use robinson::{copoint_partition, find_compatible_order, mmodule_tree, parse_matrix, recognize};
use robinson_bench::{example19, example19_text, toeplitz, SIZES};
use std::hint::black_box;

fn bench_recognize(c: &mut Criterion) {
    let mut group = c.benchmark_group("recognize");
    for n in SIZES {
        let space = toeplitz(n, 7);
        group.throughput(Throughput::Elements((n * n) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| b.iter(|| recognize(black_box(s))));
    }
    group.finish();
}

fn bench_copoints(c: &mut Criterion) {
    let mut group = c.benchmark_group("copoint_partition");
    for n in SIZES {
        let space = toeplitz(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| b.iter(|| copoint_partition(black_box(s), 0)));
    }
    group.finish();
}

fn bench_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("first_violation");
    for n in SIZES {
        let space = toeplitz(n, 7);
        let order = find_compatible_order(&space).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| b.iter(|| s.first_violation(black_box(&order))));
    }
    group.finish();
}

fn bench_example(c: &mut Criterion) {
    let space = example19();
    c.bench_function("example19/parse", |b| b.iter(|| parse_matrix(black_box(example19_text()))));
    c.bench_function("example19/recognize", |b| b.iter(|| recognize(black_box(&space))));
    c.bench_function("example19/mmodule_tree", |b| b.iter(|| mmodule_tree(black_box(&space))));
}

criterion_group!(scaling, bench_recognize, bench_copoints, bench_check);
criterion_group!(example, bench_example);
criterion_main!(scaling, example);
