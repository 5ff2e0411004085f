use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use symtangent::algebra::{nullspace, rank_over_fraction_field};
use symtangent::LaurentPoly;
use symtangent_bench::{dense_poly, poly_matrix, sparse_matrix};

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("laurent_mul");
    for d in [4, 8, 12] {
        let (p, q) = (dense_poly(d, 1), dense_poly(d, 2));
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| b.iter(|| black_box(&p) * black_box(&q)));
    }
    group.finish();
}

fn substitute(c: &mut Criterion) {
    let p = dense_poly(8, 3);
    let atlas = symtangent::HirzebruchAtlas::new(3).unwrap();
    let map = atlas.transition(symtangent::Chart::W1, symtangent::Chart::W3).unwrap();
    c.bench_function("pull_scalar_w1_w3_deg8", |b| b.iter(|| map.pull_scalar(black_box(&p)).unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("nullspace");
    for n in [20, 40, 80] {
        let m = sparse_matrix(n * 3 / 4, n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| nullspace(black_box(&m), n)));
    }
    group.finish();
    let pm: Vec<Vec<LaurentPoly>> = poly_matrix(4, 3, 2, 11);
    c.bench_function("fraction_field_rank_4x3", |b| b.iter(|| rank_over_fraction_field(black_box(&pm)).unwrap()));
}

criterion_group!(benches, multiply, substitute, linear_algebra);
criterion_main!(benches);
