//! Benchmarks for the hot paths: short-vector enumeration, certified minima,
//! straightening, and the KZ profile.

use criterion::{criterion_group, criterion_main, Criterion};

use hermite_core::catalog;
use hermite_core::enumeration::{grassmann_form, kz_profile, minimum, short_vectors};
use hermite_core::forms::HumbertForm;
use hermite_core::partitions::Partition;
use hermite_core::rat::int;
use hermite_core::schur::{straighten, VectorTableau};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn bench_short_vectors(c: &mut Criterion) {
    let d4 = catalog::lookup("D4").unwrap().gram;
    let lambda2 = grassmann_form(&d4, 2);
    c.bench_function("short_vectors Λ²D4 ≤ 4", |b| {
        b.iter(|| short_vectors(lambda2.gram(), &int(4)).unwrap())
    });
    let e8 = catalog::lookup("E8").unwrap().gram;
    c.bench_function("short_vectors E8 ≤ 2 (120 roots)", |b| {
        b.iter(|| short_vectors(e8.matrix(), &int(2)).unwrap())
    });
}

fn bench_minimum(c: &mut Criterion) {
    let a3 = HumbertForm::rational(catalog::lookup("A3").unwrap().gram);
    let shape_a3 = p(&[2, 1]);
    c.bench_function("minimum A3 (2,1)", |b| b.iter(|| minimum(&a3, &shape_a3).unwrap()));

    let d4 = HumbertForm::rational(catalog::lookup("D4").unwrap().gram);
    let shape_d4 = p(&[2, 1, 1]);
    c.bench_function("minimum D4 (2,1,1)", |b| b.iter(|| minimum(&d4, &shape_d4).unwrap()));
}

fn bench_straighten(c: &mut Criterion) {
    let shape = p(&[2, 1]);
    let cells = vec![
        vec![
            vec![int(1), int(-2), int(3)],
            vec![int(2), int(1), int(-1)],
        ],
        vec![vec![int(-1), int(3), int(2)]],
    ];
    let vt = VectorTableau::new(shape, cells, 3).unwrap();
    c.bench_function("straighten dense (2,1) tableau", |b| b.iter(|| straighten(&vt)));
}

fn bench_profile(c: &mut Criterion) {
    let d4 = catalog::lookup("D4").unwrap().gram;
    c.bench_function("kz_profile D4", |b| b.iter(|| kz_profile(&d4).unwrap()));
}

criterion_group!(benches, bench_short_vectors, bench_minimum, bench_straighten, bench_profile);
criterion_main!(benches);
