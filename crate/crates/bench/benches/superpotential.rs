use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ellipsoidal_core::superpotential::{recursion_wt_t, tree_wt_t, tree_wt_t_infinity, InnerSum};
use ellipsoidal_core::trees::enumerate_trees;
use ellipsoidal_core::AspectRatio;

fn ratios() -> [(&'static str, AspectRatio); 2] {
    [
        ("inf", AspectRatio::Infinity),
        ("3/2", AspectRatio::plus_delta(3, 2).unwrap()),
    ]
}

fn tree_formula(c: &mut Criterion) {
    let mut g = c.benchmark_group("tree");
    for d in [4, 6, 8] {
        enumerate_trees(d).unwrap();
        for (name, a) in ratios() {
            g.bench_with_input(BenchmarkId::new(name, d), &d, |b, &d| {
                b.iter(|| tree_wt_t(black_box(d), a))
            });
        }
        g.bench_with_input(BenchmarkId::new("closed-inf", d), &d, |b, &d| {
            b.iter(|| tree_wt_t_infinity(black_box(d)))
        });
    }
    g.finish();
}

fn recursion(c: &mut Criterion) {
    let mut g = c.benchmark_group("recursion");
    for d in [4, 6, 8] {
        for (name, a) in ratios() {
            g.bench_with_input(
                BenchmarkId::new(format!("{name}/multiset"), d),
                &d,
                |b, &d| b.iter(|| recursion_wt_t(black_box(d), a, InnerSum::Multiset)),
            );
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_trees/10", |b| {
        b.iter(|| enumerate_trees(black_box(10)))
    });
}

criterion_group!(benches, tree_formula, recursion, enumeration);
criterion_main!(benches);
