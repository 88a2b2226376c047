use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use delta_springer::actions::{operator_matrix_l, HeckeParams};
use delta_springer::diagrams::enumerate_cup_diagrams;
use delta_springer::homology::LBasis;
use delta_springer::tensor::{commutant_dimension, hecke_generators};
use delta_springer::ShapeParams;

fn shape(n: usize, k: usize, m: usize) -> ShapeParams {
    ShapeParams::strict(n, k, m).expect("strict shape")
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for p in [shape(8, 4, 2), shape(12, 6, 3), shape(16, 8, 4)] {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| b.iter(|| enumerate_cup_diagrams(black_box(p)).unwrap()));
    }
    g.finish();
}

fn l_basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("l_basis");
    for (p, d) in [(shape(8, 4, 2), 2), (shape(10, 5, 2), 3), (shape(12, 6, 3), 3)] {
        g.bench_with_input(BenchmarkId::new(p.to_string(), d), &(p, d), |b, &(p, d)| b.iter(|| LBasis::new(black_box(p), d).unwrap()));
    }
    g.finish();
}

fn hecke_matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("hecke_matrices");
    for (p, d) in [(shape(8, 4, 2), 2), (shape(10, 5, 2), 3)] {
        let basis = LBasis::new(p, d).unwrap();
        let xi = HeckeParams::springer(p);
        g.bench_with_input(BenchmarkId::new(p.to_string(), d), &basis, |b, basis| {
            b.iter(|| {
                for gen in hecke_generators(basis.size()) {
                    black_box(operator_matrix_l(gen, basis, &xi).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn commutant(c: &mut Criterion) {
    let mut g = c.benchmark_group("commutant");
    g.sample_size(10);
    for (p, d) in [(shape(7, 3, 1), 2), (shape(8, 4, 2), 2)] {
        g.bench_with_input(BenchmarkId::new(p.to_string(), d), &(p, d), |b, &(p, d)| {
            b.iter(|| commutant_dimension(black_box(p), d).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, l_basis, hecke_matrices, commutant);
criterion_main!(benches);
