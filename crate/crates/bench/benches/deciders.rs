use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use sesq_core::darrow::q_of_form;
use sesq_core::decide::{isometry_bruteforce, isometry_transfer, witt_cancellation_check, DEFAULT_CAP};
use sesq_core::endoring::{endo_of_form, herm_classes, radical, units_enumerate};
use sesq_core::fixtures::{cyclic_group_ring, gram_form, matrix_row_module, small_module_library, system};
use sesq_core::form::random_form;
use sesq_core::{Field, InvAlgebra, RightModule};

fn deciders(c: &mut Criterion) {
    let f3 = Field::prime(3).unwrap();
    let a = system(&gram_form(&f3, &[&[1, 0], &[0, 1]]));
    let b = system(&gram_form(&f3, &[&[0, 1], &[1, 0]]));
    c.bench_function("bruteforce F_3 rank 2", |bench| {
        bench.iter(|| isometry_bruteforce(black_box(&a), black_box(&b), DEFAULT_CAP).unwrap())
    });
    c.bench_function("transfer F_3 rank 2", |bench| {
        bench.iter(|| isometry_transfer(black_box(&a), black_box(&b), DEFAULT_CAP).unwrap())
    });

    let reg = RightModule::regular(cyclic_group_ring(&f3, 2));
    let big = reg.direct_sum(&reg).unwrap();
    let s = system(&random_form(&big, 1, true, 100).unwrap());
    let t = system(&random_form(&big, 2, true, 100).unwrap());
    c.bench_function("bruteforce F_3[C_2]^2", |bench| {
        bench.iter(|| isometry_bruteforce(black_box(&s), black_box(&t), DEFAULT_CAP).unwrap())
    });
}

fn rings(c: &mut Criterion) {
    let f3 = Field::prime(3).unwrap();
    let m2 = Arc::new(InvAlgebra::matrix_algebra(&f3, 2).unwrap());
    c.bench_function("units M_2(F_3)", |bench| {
        bench.iter(|| units_enumerate(black_box(&m2), DEFAULT_CAP).unwrap())
    });
    let c3 = cyclic_group_ring(&f3, 3);
    c.bench_function("radical F_3[C_3]", |bench| {
        bench.iter(|| radical(black_box(&c3), DEFAULT_CAP).unwrap())
    });
    let row = matrix_row_module(&m2, 2).unwrap();
    let s = random_form(&row.direct_sum(&row).unwrap(), 3, true, 100).unwrap();
    let e = endo_of_form(&q_of_form(&system(&s)).unwrap()).unwrap().to_algebra().unwrap();
    c.bench_function("classes End q(row ⊕ row)", |bench| {
        bench.iter(|| herm_classes(black_box(&e), DEFAULT_CAP).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let lib = small_module_library(&Field::prime(5).unwrap());
    let mut group = c.benchmark_group("witt");
    group.sample_size(10);
    group.bench_function("F_5, 20 trials", |bench| {
        bench.iter(|| witt_cancellation_check(black_box(&lib), 20, 7, 10_000_000).unwrap())
    });
    group.finish();
}

criterion_group!(benches, deciders, rings, suites);
criterion_main!(benches);
