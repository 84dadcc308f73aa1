use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use detour_bench::{cycle_instance, grid_instance, tetra_instance};
use detour_core::tetra::{case_system, find_k4_subdivision, fourier_motzkin_feasible, Case, DEFAULT_SEARCH_BUDGET};
use detour_core::treewidth::{heuristic_decomposition, treewidth_lower_bound, Strategy};
use detour_core::{exact_path, solve_exact_detour, solve_longest_detour, LongestDetourConfig, OracleConfig};
use std::hint::black_box;

fn longest(c: &mut Criterion) {
    let mut group = c.benchmark_group("longest_detour");
    for (rows, cols) in [(3, 6), (4, 6), (5, 6)] {
        let inst = grid_instance(rows, cols, 4);
        group.bench_with_input(BenchmarkId::new("grid", format!("{rows}x{cols}")), &inst, |b, inst| {
            b.iter(|| solve_longest_detour(black_box(inst), &LongestDetourConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_detour");
    group.sample_size(20);
    for k in [1, 2, 3] {
        let inst = grid_instance(3, 5, k);
        group.bench_with_input(BenchmarkId::new("grid3x5/deterministic", k), &inst, |b, inst| {
            b.iter(|| solve_exact_detour(black_box(inst), &OracleConfig::deterministic()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("grid3x5/randomized", k), &inst, |b, inst| {
            b.iter(|| solve_exact_detour(black_box(inst), &OracleConfig::randomized(0.01, 7)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_path");
    for n in [8, 10, 12] {
        let inst = cycle_instance(n);
        group.bench_with_input(BenchmarkId::new("cycle/color_coding", n), &inst, |b, inst| {
            b.iter(|| exact_path(&inst.graph, 0, 1, n - 1, &OracleConfig::randomized(0.01, 3)).unwrap())
        });
    }
    group.finish();
}

fn treewidth(c: &mut Criterion) {
    let inst = grid_instance(10, 10, 1);
    c.bench_function("treewidth/min_fill/grid10x10", |b| b.iter(|| heuristic_decomposition(black_box(&inst.graph), Strategy::MinFill)));
    c.bench_function("treewidth/lower_bound/grid10x10", |b| b.iter(|| treewidth_lower_bound(black_box(&inst.graph))));
}

fn tetra(c: &mut Criterion) {
    let mut group = c.benchmark_group("tetra");
    for k in [1, 3, 5] {
        let (g, _) = tetra_instance(k);
        group.bench_with_input(BenchmarkId::new("finder", k), &g, |b, g| {
            b.iter(|| find_k4_subdivision(black_box(g), k, DEFAULT_SEARCH_BUDGET).unwrap())
        });
    }
    group.finish();
    let mut group = c.benchmark_group("certificate");
    group.sample_size(10);
    let sys = case_system(Case::B).unwrap();
    group.bench_function("fourier_motzkin/b", |b| b.iter(|| fourier_motzkin_feasible(black_box(&sys)).unwrap()));
    group.finish();
}

criterion_group!(benches, longest, exact, oracle, treewidth, tetra);
criterion_main!(benches);
