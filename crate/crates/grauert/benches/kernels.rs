//! Benchmarks for the numerical kernels, intended to be run twice:
//!
//! ```text
//! cargo bench -p grauert
//! cargo bench -p grauert --no-default-features
//! ```
//!
//! The first exercises the data-parallel paths, the second the
//! sequential fallback; criterion's saved baselines make the two
//! directly comparable.

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grauert::curvature::{extremal_hsc, kappa_fd, HscEngine};
use grauert::geometry::{sample_s, DiagonalField, MetricKind};
use grauert::radial;
use grauert::tables;

fn bench_radial(c: &mut Criterion) {
    let mut g = c.benchmark_group("radial");
    g.sample_size(10);
    g.bench_function("eval_v_small_t", |b| {
        b.iter(|| radial::eval_v(std::hint::black_box(0.5)).unwrap())
    });
    g.bench_function("eval_v_large_t", |b| {
        b.iter(|| radial::eval_v(std::hint::black_box(50.0)).unwrap())
    });
    g.finish();
}

fn bench_profile_grid(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    g.bench_function("profile_rows_64", |b| {
        b.iter(|| tables::profile_rows(1e-3, 1e3, 64, 2, 1.0, 1e-10).unwrap())
    });
    g.finish();
}

fn bench_curvature(c: &mut Criterion) {
    let mut g = c.benchmark_group("curvature");
    g.sample_size(10);
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let field = DiagonalField::new(2, -1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let z = sample_s(&field, 1.5, &mut rng).unwrap();
    g.bench_function("kappa_fd", |b| {
        b.iter(|| kappa_fd(&kind, &field, &z, 1e-3).unwrap())
    });
    let engine = HscEngine::new(&kind, &z).unwrap();
    let x = vec![
        grauert::geometry::Cx::new(0.4, -0.7),
        grauert::geometry::Cx::new(0.9, 0.2),
    ];
    g.bench_function("hsc_eval", |b| b.iter(|| engine.hsc(&x).unwrap()));
    g.bench_function("extremal_hsc_64x8", |b| {
        b.iter(|| extremal_hsc(&kind, &z, 64, 8, 42).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_radial, bench_profile_grid, bench_curvature);
criterion_main!(benches);
