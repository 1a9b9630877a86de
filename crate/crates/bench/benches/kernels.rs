use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use emptri_core::random::{random_general_position, rng_from_seed};
use emptri_core::{
    build_hypergraph, cyclic_coloring, decide, generate, verify_horton, Budget, InteriorTable, Scanner,
};

fn interior_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("interior_table");
    for n in [32usize, 64, 128] {
        let set = random_general_position(n, 10_000, &mut rng_from_seed(n as u64)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &set, |b, set| {
            b.iter(|| InteriorTable::new(black_box(set)))
        });
    }
    group.finish();
}

fn horton(c: &mut Criterion) {
    let mut group = c.benchmark_group("horton");
    for n in [64usize, 256, 512] {
        group.bench_with_input(BenchmarkId::new("generate", n), &n, |b, &n| b.iter(|| generate(black_box(n))));
        let set = generate(n).unwrap().into_point_set();
        group.bench_with_input(BenchmarkId::new("verify", n), &set, |b, set| {
            b.iter(|| verify_horton(black_box(set)))
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let set = generate(128).unwrap().into_point_set();
    let scanner = Scanner::new(&set);
    let col = cyclic_coloring(128, 5).unwrap();
    c.bench_function("scan/horton128_c5", |b| b.iter(|| scanner.scan(black_box(&col), 1)));
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    let h26 = generate(26).unwrap().into_point_set();
    group.bench_function("horton26_c4_s1", |b| b.iter(|| decide(black_box(&h26), 4, 1, Budget::unlimited())));
    group.bench_function("hypergraph_horton26_s1", |b| b.iter(|| build_hypergraph(black_box(&h26), 1)));
    let r13 = random_general_position(13, 1000, &mut rng_from_seed(13)).unwrap();
    group.bench_function("random13_c3_s1", |b| b.iter(|| decide(black_box(&r13), 3, 1, Budget::unlimited())));
    group.finish();
}

criterion_group!(benches, interior_table, horton, scan, solver);
criterion_main!(benches);
