use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use multipole_bench::fixture;
use multipole_core::analytic::{rho_k, rho_sphere_with};
use multipole_core::majorana::{build_polynomial, find_roots_using, RootMethod, DEFAULT_ROOT_TOL};
use multipole_core::montecarlo::{estimate_with, EstimateConfig};
use multipole_core::{multipoles, DEFAULT_BITS};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("multipoles");
    for ell in [5usize, 20, 50, 100, 200] {
        let cv = fixture(ell, 0);
        group.bench_with_input(BenchmarkId::from_parameter(ell), &cv, |b, cv| {
            b.iter(|| multipoles(black_box(cv)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("root_method");
    for ell in [20usize, 50] {
        let poly = build_polynomial(&fixture(ell, 1)).unwrap();
        for method in [RootMethod::Companion, RootMethod::Aberth] {
            group.bench_with_input(BenchmarkId::new(format!("{method:?}"), ell), &poly, |b, p| {
                b.iter(|| find_roots_using(black_box(p), DEFAULT_ROOT_TOL, method).unwrap())
            });
        }
    }
    group.finish();
}

fn densities(c: &mut Criterion) {
    let mut group = c.benchmark_group("rho_sphere");
    for ell in [10usize, 100, 200] {
        group.bench_with_input(BenchmarkId::from_parameter(ell), &ell, |b, &ell| {
            b.iter(|| rho_sphere_with(ell, black_box(PI / 7.0), true, DEFAULT_BITS).unwrap())
        });
    }
    group.finish();

    let pts = [
        Complex64::new(0.1, 0.2),
        Complex64::new(-0.4, 0.3),
        Complex64::new(0.7, -0.5),
    ];
    c.bench_function("rho_k/3 points, ell 10", |b| {
        b.iter(|| rho_k(black_box(&pts), 10).unwrap())
    });
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("estimate");
    group.sample_size(10);
    for ell in [5usize, 25] {
        let mut cfg = EstimateConfig::new(ell, 512, 60, 1);
        cfg.workers = Some(1);
        group.bench_with_input(BenchmarkId::from_parameter(ell), &cfg, |b, cfg| {
            b.iter(|| estimate_with(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, roots, densities, monte_carlo);
criterion_main!(benches);
