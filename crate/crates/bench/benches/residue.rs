use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tateres::cube::lift::lift_iterative;
use tateres::residue::{raw_sum, residue};
use tateres::Idempotents;
use tateres_bench::{cube_fixture, monomial_tuple, operator_tuple};

fn raw_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("raw_sum");
    for n in 1..=3 {
        let ops = operator_tuple(n, 11);
        let idem = Idempotents::standard(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ops, |b, ops| b.iter(|| raw_sum(black_box(ops), &idem).unwrap()));
    }
    group.finish();
}

fn residues(c: &mut Criterion) {
    let mut group = c.benchmark_group("residue");
    for n in 1..=3 {
        let fs = monomial_tuple(n, 12);
        group.bench_with_input(BenchmarkId::from_parameter(n), &fs, |b, fs| b.iter(|| residue(black_box(&fs[0]), &fs[1..]).unwrap()));
    }
    group.finish();
}

fn lifts(c: &mut Criterion) {
    let mut group = c.benchmark_group("lift_iterative");
    for n in 1..=2 {
        let ops = operator_tuple(n, 13);
        let idem = Idempotents::standard(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ops, |b, ops| b.iter(|| lift_iterative(black_box(ops), &idem).unwrap()));
    }
    group.finish();
}

fn homotopy(c: &mut Criterion) {
    let mut group = c.benchmark_group("cube_homotopy");
    for n in 1..=3 {
        let f = cube_fixture(n, 1, 14);
        let idem = Idempotents::standard(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| black_box(f).homotopy(&idem).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, raw_sums, residues, lifts, homotopy);
criterion_main!(benches);
