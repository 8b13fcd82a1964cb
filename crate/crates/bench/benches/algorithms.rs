use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kgrad::grading::Grading;
use kgrad::grpkit::{smith_normal_form, AbelianGroup};
use kgrad::morph::enumerate_thin_morphisms;
use kgrad::schur::{homogeneity_partition, universal_grading, DEFAULT_PATH_CAP};
use kgrad::smash::{build_smash, galois_report, verify_covering};
use kgrad_bench::{cycle, layered, matrix};

fn snf(c: &mut Criterion) {
    for n in [4, 8, 12] {
        let m = matrix(n);
        c.bench_function(&format!("smith normal form {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&m))));
    }
}

fn categories(c: &mut Criterion) {
    c.bench_function("build layered 3x3", |b| b.iter(|| layered(black_box(3), 3)));
    let cat = layered(2, 4);
    c.bench_function("homogeneity partition 8 paths", |b| {
        b.iter(|| homogeneity_partition(black_box(&cat), 0, 2, DEFAULT_PATH_CAP).unwrap())
    });
}

fn gradings(c: &mut Criterion) {
    let cat = cycle(4);
    c.bench_function("universal grading of a 4-cycle", |b| b.iter(|| universal_grading(black_box(&cat), 0).unwrap()));
    let u = universal_grading(&cat, 0).unwrap().grading;
    c.bench_function("thin endomorphisms of a 4-cycle", |b| {
        b.iter(|| enumerate_thin_morphisms(black_box(&u), &u, 0).unwrap())
    });
    let c6 = AbelianGroup::cyclic(6);
    let one = c6.generators()[0].clone();
    let degrees = vec![one, c6.zero(), c6.zero(), c6.zero()];
    let x = Grading::from_arrow_degrees(cat.clone(), c6, &degrees).unwrap().validated().unwrap();
    c.bench_function("smash product by C6", |b| b.iter(|| build_smash(black_box(&x)).unwrap()));
    let s = build_smash(&x).unwrap();
    c.bench_function("covering and Galois checks by C6", |b| {
        b.iter(|| {
            verify_covering(black_box(&s));
            galois_report(&s).unwrap()
        })
    });
}

criterion_group!(benches, snf, categories, gradings);
criterion_main!(benches);
