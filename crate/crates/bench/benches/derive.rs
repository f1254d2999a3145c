use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use binfty_bench::algebras;
use binfty_core::structures::check_b_infinity;
use binfty_core::underlying::{borjeson_closed_form, underlying_b_infinity};

fn derive(c: &mut Criterion) {
    let mut group = c.benchmark_group("underlying_b_infinity");
    group.sample_size(10);
    for (name, alg) in algebras() {
        for cap in [4, 5] {
            group.bench_with_input(BenchmarkId::new(name, cap), &cap, |b, &cap| {
                b.iter(|| underlying_b_infinity(&alg, cap).unwrap())
            });
        }
    }
    group.finish();
}

fn closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    group.sample_size(10);
    for (name, alg) in algebras() {
        group.bench_function(BenchmarkId::new(name, 5), |b| b.iter(|| borjeson_closed_form(&alg, 5).unwrap()));
    }
    group.finish();
}

fn laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_b_infinity");
    group.sample_size(10);
    for (name, alg) in algebras() {
        let s = underlying_b_infinity(&alg, 4).unwrap();
        group.bench_function(BenchmarkId::new(name, 4), |b| b.iter(|| check_b_infinity(&s, 4, 4, 4).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, derive, closed_form, laws);
criterion_main!(benches);
