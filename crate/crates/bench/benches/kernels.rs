use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use reductive_core::chevalley::{all_subsets, check_adams_he};
use reductive_core::harness::verify_table1;
use reductive_core::{FiniteTorus, FrobeniusTwist, RootSystem, WeylElement, WeylGroup};

fn weyl_enumeration(c: &mut Criterion) {
    let e6 = Arc::new(RootSystem::of_type("E6").unwrap());
    let mut g = c.benchmark_group("weyl");
    g.sample_size(10);
    g.bench_function("enumerate E6", |b| b.iter(|| WeylGroup::enumerate(e6.clone(), 100_000).unwrap().len()));
    g.finish();
}

fn torus_snf(c: &mut Criterion) {
    let phi = RootSystem::of_type("E6").unwrap();
    let w = WeylElement::from_word(&phi, &[0, 2, 3, 1, 4, 5, 3, 2]).unwrap();
    let m = w.coroot_matrix(&phi);
    let q = BigInt::from(1_000_003);
    c.bench_function("torus snf E6", |b| {
        b.iter(|| {
            let t = FiniteTorus::new(FrobeniusTwist::new(m.clone(), q.clone(), 1).unwrap()).unwrap();
            black_box(t.order())
        })
    });
}

fn adams_he(c: &mut Criterion) {
    let phi = RootSystem::of_type("E6").unwrap();
    let subsets = all_subsets(6);
    c.bench_function("adams-he E6 all subsets", |b| {
        b.iter(|| subsets.iter().filter(|s| check_adams_he(&phi, s)).count())
    });
}

fn table_rows(c: &mut Criterion) {
    let q = BigInt::from(13);
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("all rows q=13", |b| b.iter(|| verify_table1(&q).unwrap().len()));
    g.finish();
}

criterion_group!(kernels, weyl_enumeration, torus_snf, adams_he, table_rows);
criterion_main!(kernels);
