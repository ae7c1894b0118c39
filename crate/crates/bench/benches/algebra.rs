use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pf_bench::{exp_problem, heat_problem, lie_sum, poisson_pair, symplectic_pair, tame_map};
use pf_core::automorphisms::jung_decompose;
use pf_core::series_solver::SeriesSession;

fn lie_bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("lie_bracket");
    for len in [4, 6, 8] {
        let (a, b) = (lie_sum(len), lie_sum(len - 1));
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bench, _| {
            bench.iter(|| black_box(&a).bracket(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn poisson_bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("poisson_bracket");
    for k in [1, 2, 3] {
        let (a, b) = poisson_pair(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |bench, _| {
            bench.iter(|| black_box(&a).bracket(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn symplectic_bracket(c: &mut Criterion) {
    let (a, b) = symplectic_pair(2, 4);
    c.bench_function("symplectic_bracket/ps2_deg4", |bench| {
        bench.iter(|| black_box(&a).bracket(black_box(&b)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_truncate");
    for n in [8, 16] {
        group.bench_with_input(BenchmarkId::new("exp", n), &n, |bench, &n| {
            bench.iter(|| SeriesSession::new(exp_problem()).truncate(n).unwrap())
        });
    }
    for n in [4, 6] {
        group.bench_with_input(BenchmarkId::new("heat", n), &n, |bench, &n| {
            bench.iter(|| SeriesSession::new(heat_problem()).truncate(n).unwrap())
        });
    }
    group.finish();
}

fn jung(c: &mut Criterion) {
    let mut group = c.benchmark_group("jung_decompose");
    for moves in [2, 4] {
        let phi = tame_map(3, moves);
        group.bench_with_input(BenchmarkId::from_parameter(moves), &phi, |bench, phi| {
            bench.iter(|| jung_decompose(black_box(phi)))
        });
    }
    group.finish();
}

criterion_group!(benches, lie_bracket, poisson_bracket, symplectic_bracket, series, jung);
criterion_main!(benches);
