use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tropmat::adjoint::{as_small_integers, cofactor_identity_check_all};
use tropmat::gen::{random_quotient, random_rational_matrix, random_valuated, rng};
use tropmat::lorentzian::{basis_polynomial, is_lorentzian, lorentzian_violation_par};
use tropmat::matroid::{enumerate_linear_subclasses, uniform};
use tropmat::valuated::lines_intersect;
use tropmat::{inertia, Limits, SymMatrix};

fn arith(c: &mut Criterion) {
    let mut r = rng(1);
    let a = random_rational_matrix(&mut r, 8, 8, 5);
    let sym: Vec<Vec<_>> = (0..8).map(|i| (0..8).map(|j| &a[i][j] + &a[j][i]).collect()).collect();
    let m = SymMatrix::from_rows(&sym).unwrap();
    c.bench_function("inertia 8x8", |b| b.iter(|| inertia(black_box(&m))));
}

fn lorentzian(c: &mut Criterion) {
    let f = basis_polynomial(&uniform(4, 8));
    c.bench_function("is_lorentzian U(4,8)", |b| b.iter(|| is_lorentzian(black_box(&f))));
    c.bench_function("is_lorentzian U(4,8) 4 threads", |b| {
        b.iter(|| lorentzian_violation_par(black_box(&f), 4))
    });
}

fn matroids(c: &mut Criterion) {
    let m = uniform(3, 6);
    let limits = Limits::default();
    c.bench_function("linear subclasses U(3,6)", |b| {
        b.iter(|| enumerate_linear_subclasses(black_box(&m), &limits).unwrap())
    });
}

fn cofactor(c: &mut Criterion) {
    let mut r = rng(2);
    let a = random_rational_matrix(&mut r, 3, 6, 4);
    let small = as_small_integers(&a).unwrap();
    c.bench_function("cofactor identity 3x6 rational", |b| b.iter(|| cofactor_identity_check_all(black_box(&a))));
    c.bench_function("cofactor identity 3x6 i128", |b| b.iter(|| cofactor_identity_check_all(black_box(&small))));
}

fn valuated(c: &mut Criterion) {
    let mut r = rng(3);
    let mu = random_valuated(&mut r, 7, 3, 4, 0.1);
    let (t1, t2) = (random_quotient(&mut r, &mu, 4), random_quotient(&mut r, &mu, 4));
    c.bench_function("lines_intersect n=7", |b| b.iter(|| lines_intersect(black_box(&t1), black_box(&t2)).unwrap()));
}

criterion_group!(benches, arith, lorentzian, matroids, cofactor, valuated);
criterion_main!(benches);
