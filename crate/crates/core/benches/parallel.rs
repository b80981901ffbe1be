//! Sequential versus pooled execution of the heavy kernels.
//!
//! Each workload runs once inside a one-thread rayon pool and once inside
//! the default pool. Without the `parallel` feature both variants take the
//! sequential code path.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use hydra_core::catalog::{catalog, verify_all, Identity};
use hydra_core::hydra::{hydra_r, Heads};
use hydra_core::languages::{build_language, LanguageKind};
use hydra_core::plethysm::{plethysm, plethystic_inverse};
use hydra_core::{Series, TruncationWindow};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("1-thread", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("default", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn bench_plethysm(c: &mut Criterion) {
    let w = TruncationWindow::new(5, 12);
    let comps = build_language(&LanguageKind::Compositions, &w).unwrap();
    let s = hydra_r(Heads::Finite(2), &w).unwrap();

    let mut group = c.benchmark_group("plethysm");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("compositions-of-hydra", name), &(), |b, _| {
            b.iter(|| pool.install(|| plethysm(&comps, &s).unwrap()))
        });
    }
    group.finish();
}

fn bench_inverse(c: &mut Criterion) {
    let w = TruncationWindow::new(5, 12);
    let plus = build_language(&LanguageKind::Compositions, &w).unwrap().sub(&Series::one(w));

    let mut group = c.benchmark_group("plethystic-inverse");
    group.sample_size(10).measurement_time(Duration::from_secs(15));
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("compositions-plus", name), &(), |b, _| {
            b.iter(|| pool.install(|| plethystic_inverse(&plus).unwrap()))
        });
    }
    group.finish();
}

fn bench_catalog(c: &mut Criterion) {
    let quick: Vec<Identity> = catalog().into_iter().filter(|i| (1..=9).contains(&i.criterion)).collect();

    let mut group = c.benchmark_group("verify");
    group.sample_size(10).measurement_time(Duration::from_secs(30));
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("criteria-1-to-9", name), &(), |b, _| {
            b.iter(|| pool.install(|| verify_all(&quick)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_plethysm, bench_inverse, bench_catalog);
criterion_main!(benches);
