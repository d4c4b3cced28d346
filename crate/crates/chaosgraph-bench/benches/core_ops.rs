use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chaosgraph::constructions as cons;
use chaosgraph::homsum::{Dist, HomogeneousSum, CONTRACTION_CAP};
use chaosgraph::reducibility as red;
use chaosgraph::{MatrixKind, EXACT_LIMIT_BASE};

fn config() -> Criterion {
    Criterion::default()
        .warm_up_time(Duration::from_millis(300))
        .measurement_time(Duration::from_secs(2))
        .sample_size(10)
}

fn bench_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplacian_spectrum");
    for q in [10usize, 20, 30] {
        let g = cons::rook(q, 2).unwrap();
        group.bench_with_input(BenchmarkId::new("rook", q * q), &g, |b, g| {
            b.iter(|| g.spectrum(MatrixKind::NormalizedLaplacian).unwrap())
        });
    }
    group.finish();
}

fn bench_phi_k_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi_k_exact");
    for n in [8usize, 10, 12] {
        let g = cons::complete(n).unwrap();
        group.bench_with_input(BenchmarkId::new("k2_complete", n), &g, |b, g| {
            b.iter(|| g.phi_k_exact(2, EXACT_LIMIT_BASE).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("k3_complete", n), &g, |b, g| {
            b.iter(|| g.phi_k_exact(3, EXACT_LIMIT_BASE).unwrap())
        });
    }
    group.finish();
}

fn bench_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampling");
    let rook = HomogeneousSum::from_graph(&cons::rook(10, 2).unwrap());
    group.bench_function("rook(10,2)_10k_gaussian", |b| {
        b.iter(|| rook.sample(Dist::Gaussian, 10_000, 0))
    });
    let tri = cons::triangle_hypergraph(8).unwrap();
    group.bench_function("triangle(8)_10k_gaussian", |b| {
        b.iter(|| tri.sample(Dist::Gaussian, 10_000, 0))
    });
    group.finish();
}

fn bench_contractions(c: &mut Criterion) {
    let mut group = c.benchmark_group("contraction_norms");
    let rook = HomogeneousSum::from_graph(&cons::rook(10, 2).unwrap());
    group.bench_function("rook(10,2)", |b| {
        b.iter(|| rook.contraction_norms(CONTRACTION_CAP).unwrap())
    });
    let tri = cons::triangle_hypergraph(6).unwrap();
    group.bench_function("triangle(6)", |b| {
        b.iter(|| tri.contraction_norms(CONTRACTION_CAP).unwrap())
    });
    group.finish();
}

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_partition");
    let q = cons::hypercube(14).unwrap();
    let z = HomogeneousSum::from_graph(&q);
    let p = red::hypercube_boxes(14, 3).unwrap();
    group.bench_function("hypercube_boxes_q14", |b| {
        b.iter(|| red::evaluate_partition(&z, &p).unwrap())
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_spectrum, bench_phi_k_exact, bench_sampling, bench_contractions,
        bench_reduction
}
criterion_main!(benches);
