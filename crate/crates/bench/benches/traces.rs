use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypertrace_bench::{path, rooting_digraphs, star};
use hypertrace_core::rational::ratio;
use hypertrace_core::{estrada_index, trace, Budget};

fn traces(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("trace");
    for d in [6, 9, 12] {
        let h = path(3, 3);
        g.bench_with_input(BenchmarkId::new("hyperpath_3_3", d), &d, |b, &d| {
            b.iter(|| trace(black_box(&h), d, &budget).unwrap())
        });
    }
    let s = star(3, 4);
    g.bench_function("hyperstar_3_4_d12", |b| b.iter(|| trace(black_box(&s), 12, &budget).unwrap()));
    g.finish();
}

fn circuits(c: &mut Criterion) {
    let budget = Budget::default();
    let gs = rooting_digraphs(6);
    let g0 = &gs[0];
    let mut g = c.benchmark_group("euler_circuits");
    g.bench_function("best", |b| b.iter(|| black_box(g0).euler_circuits_best().unwrap()));
    g.bench_function("exhaustive", |b| b.iter(|| black_box(g0).euler_circuits_exhaustive(&budget).unwrap()));
    g.finish();
}

fn estrada(c: &mut Criterion) {
    let budget = Budget::default();
    let tol = ratio(1, 1000);
    let h = path(3, 3);
    c.bench_function("estrada_hyperpath_3_3", |b| b.iter(|| estrada_index(black_box(&h), &tol, &budget).unwrap()));
}

criterion_group!(benches, traces, circuits, estrada);
criterion_main!(benches);
