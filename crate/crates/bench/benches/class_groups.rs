use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modunits_bench::{PQ_LEVELS, PRIME_POWERS};
use modunits_core::jacobian::delta_matrix;
use modunits_core::transform::generator_leading_coefficient;
use modunits_core::{class_group, class_group_for_level, class_group_pq, generalized_torsion, Generator};

fn class_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_group");
    for &(p, n) in PRIME_POWERS {
        g.bench_with_input(BenchmarkId::new("prime_power", format!("{p}^{n}")), &(p, n), |b, &(p, n)| {
            b.iter(|| class_group(black_box(p), black_box(n)).unwrap())
        });
    }
    for &(p, q) in PQ_LEVELS {
        g.bench_with_input(BenchmarkId::new("pq", format!("{p}*{q}")), &(p, q), |b, &(p, q)| {
            b.iter(|| class_group_pq(black_box(p), black_box(q)).unwrap())
        });
    }
    g.bench_function("level_360", |b| b.iter(|| class_group_for_level(black_box(360)).unwrap()));
    g.finish();
}

fn leading_coefficients(c: &mut Criterion) {
    let mut g = c.benchmark_group("leading_coefficients");
    for &(p, n) in PRIME_POWERS {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p}^{n}")), &(p, n), |b, &(p, n)| {
            b.iter(|| {
                for gen in Generator::all(n) {
                    for m in 0..=n {
                        black_box(generator_leading_coefficient(p, n, m, gen).unwrap());
                    }
                }
            })
        });
    }
    g.finish();
}

fn delta(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta");
    for &(p, n) in PRIME_POWERS {
        g.bench_with_input(BenchmarkId::new("matrix", format!("{p}^{n}")), &(p, n), |b, &(p, n)| {
            b.iter(|| delta_matrix(black_box(p), black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("torsion", format!("{p}^{n}")), &(p, n), |b, &(p, n)| {
            b.iter(|| generalized_torsion(black_box(p), black_box(n)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, class_groups, leading_coefficients, delta);
criterion_main!(benches);
