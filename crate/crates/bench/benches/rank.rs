use std::hint::black_box;

use colorfil_bench::joint_system;
use colorfil_core::closed_forms::main_theorem_total;
use colorfil_core::linalg::{rank_certified_with, rank_fraction_free, rank_mod, Primes};
use colorfil_core::{assemble_z2_system, build_model, BlockKind, SystemOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const SHAPES: [(usize, usize, usize); 3] = [(8, 6, 6), (16, 12, 12), (25, 20, 20)];

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    let primes = Primes::default();
    for (n, m, p) in SHAPES {
        let matrix = joint_system(n, m, p);
        let id = format!("{n},{m},{p}");
        group.bench_with_input(BenchmarkId::new("modular", &id), &matrix, |b, mx| {
            b.iter(|| rank_mod(black_box(mx), primes.first))
        });
        group.bench_with_input(BenchmarkId::new("certified", &id), &matrix, |b, mx| {
            b.iter(|| rank_certified_with(black_box(mx), primes))
        });
        group.bench_with_input(BenchmarkId::new("fraction_free", &id), &matrix, |b, mx| {
            b.iter(|| rank_fraction_free(black_box(mx)))
        });
    }
    group.finish();
}

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assembly");
    group.sample_size(10);
    for (n, m, p) in SHAPES {
        let alg = build_model(n, m, p).unwrap();
        group.bench_function(format!("{n},{m},{p}"), |b| {
            b.iter(|| assemble_z2_system(black_box(&alg), &BlockKind::ALL, SystemOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("closed_forms/grid_8x6x6", |b| {
        b.iter(|| {
            let mut total = 0;
            for n in 1..=8 {
                for m in 1..=6 {
                    for p in 1..=6 {
                        total += main_theorem_total(black_box(n), m, p).total;
                    }
                }
            }
            total
        })
    });
}

criterion_group!(benches, rank, assembly, closed_forms);
criterion_main!(benches);
