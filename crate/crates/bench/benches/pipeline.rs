use criterion::{criterion_group, criterion_main, Criterion};
use gkzf_bench::{grid, hexagon, ints, rat};
use gkzf_core::apolar::dual_basis;
use gkzf_core::pairs::standard_pairs;
use gkzf_core::pipeline::{solve, verify, Analysis, Options};
use gkzf_core::toric::{initial_ideal, toric_ideal};

const FIB: [i64; 9] = [1, 2, 3, 5, 8, 13, 21, 34, 55];

fn groebner(c: &mut Criterion) {
    let g33 = grid(3, 3);
    c.bench_function("toric ideal 3x3", |b| b.iter(|| toric_ideal(&g33).unwrap()));
    let g24 = grid(2, 4);
    c.bench_function("toric ideal 2x4", |b| b.iter(|| toric_ideal(&g24).unwrap()));
    let hex = hexagon();
    let gb = toric_ideal(&hex).unwrap();
    c.bench_function("initial ideal hexagon", |b| b.iter(|| initial_ideal(&hex, &gb, &ints(&[2, 3, 8, 1, 13, 5])).unwrap()));
}

fn pairs(c: &mut Criterion) {
    let a = grid(3, 3);
    let gb = toric_ideal(&a).unwrap();
    let data = initial_ideal(&a, &gb, &ints(&FIB)).unwrap();
    c.bench_function("standard pairs 3x3", |b| b.iter(|| standard_pairs(&data.initial, 9)));
}

fn duals(c: &mut Criterion) {
    let an = Analysis::new(grid(3, 3), &ints(&FIB)).unwrap();
    let sols = solve(&an, &ints(&[0; 6]), &Options::default()).unwrap();
    let p = sols[0].p.clone();
    c.bench_function("dual basis 3x3", |b| b.iter(|| dual_basis(&p, 6).unwrap()));
}

fn end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let hex = Analysis::new(hexagon(), &ints(&[2, 3, 8, 1, 13, 5])).unwrap();
    let beta = vec![rat(1, 3), rat(0, 1), rat(1, 3)];
    group.bench_function("hexagon", |b| b.iter(|| solve(&hex, &beta, &Options::default()).unwrap()));
    let k3 = Analysis::new(grid(3, 3), &ints(&FIB)).unwrap();
    let half = vec![rat(1, 2); 6];
    group.bench_function("3x3 half parameter", |b| b.iter(|| solve(&k3, &half, &Options::default()).unwrap()));
    let sols = solve(&k3, &half, &Options::default()).unwrap();
    group.bench_function("verify 3x3 half parameter", |b| b.iter(|| verify(&k3, &half, &sols, &Options::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, groebner, pairs, duals, end_to_end);
criterion_main!(benches);
