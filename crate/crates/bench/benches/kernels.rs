use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nikodym_bench::{dense_poly, elements, punctured, spread_fixture};
use nikodym_core::geometry::{is_weak_nikodym, Space, TieBreak};
use nikodym_core::spread::is_spread_at;
use nikodym_core::{ExpVec, Field};

fn field_mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("field_mul");
    for spec in ["101", "3^4", "2^8"] {
        let f = Field::from_spec(spec).unwrap();
        let xs = elements(&f, 1024, 1);
        let ys = elements(&f, 1024, 2);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &f, |b, f| {
            b.iter(|| {
                let mut acc = f.one();
                for (&x, &y) in xs.iter().zip(&ys) {
                    acc = f.add(acc, f.mul(x, y));
                }
                black_box(acc)
            })
        });
    }
    g.finish();
}

fn hasse(c: &mut Criterion) {
    let mut g = c.benchmark_group("hasse");
    for (spec, deg) in [("5", 8u32), ("3^2", 8), ("7", 12)] {
        let f = Field::from_spec(spec).unwrap();
        let p = dense_poly(&f, 2, deg, 3);
        let orders = ExpVec::all_below(2, 4);
        let point = elements(&f, 2, 4);
        g.bench_function(BenchmarkId::new(spec, deg), |b| {
            b.iter(|| {
                for a in &orders {
                    black_box(p.hasse(a));
                }
                black_box(p.mult_at(&point).unwrap())
            })
        });
    }
    g.finish();
}

fn mn_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("mn_rank");
    g.sample_size(20);
    let f = Field::new(11, 1).unwrap();
    for (k, n) in [(9usize, 2u32), (9, 3), (16, 3)] {
        let inst = spread_fixture(&f, k, 2, 5);
        let d = (k as f64).sqrt() as u32 * n;
        g.bench_function(BenchmarkId::new(format!("k{k}"), n), |b| {
            b.iter(|| black_box(is_spread_at(&inst, n, d, 1 << 24).unwrap()))
        });
    }
    g.finish();
}

fn weak_nikodym(c: &mut Criterion) {
    let mut g = c.benchmark_group("weak_nikodym");
    for (q, d) in [(5u64, 2usize), (7, 2), (4, 3)] {
        let f = Field::from_order(q).unwrap();
        let space = Space::new(&f, d, 1 << 20).unwrap();
        let set = punctured(&space, q as usize, 6);
        g.bench_function(BenchmarkId::new(format!("q{q}"), d), |b| {
            b.iter(|| black_box(is_weak_nikodym(&set, TieBreak::Canonical).holds()))
        });
    }
    g.finish();
}

criterion_group!(benches, field_mul, hasse, mn_rank, weak_nikodym);
criterion_main!(benches);
