//! Benchmarks for the hot engines: coherence checks, Hopf axiom
//! verification, condensation, and the bimodule table.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use skelcat::abelian;
use skelcat::catalog::{builtin_ring, builtin_twists, drinfeld_double_of_group, CatalogKey};
use skelcat::cond::{condense, BraidedInput};
use skelcat::groups::FiniteGroup;
use skelcat::hopf;
use skelcat::monad;
use skelcat::skel;

fn bench_pentagon(c: &mut Criterion) {
    let fib = skel::fib_skeletal();
    let dz3 = skel::builtin_skeletal(&skel::SkelKey::DZn(3)).unwrap();
    c.bench_function("pentagon_fib", |b| {
        b.iter(|| skel::check_pentagon(black_box(&fib), 1e-9).unwrap())
    });
    c.bench_function("pentagon_hexagon_dz3", |b| {
        b.iter(|| {
            skel::check_pentagon(black_box(&dz3), 1e-9).unwrap();
            skel::check_hexagon(black_box(&dz3), 1e-9).unwrap()
        })
    });
}

fn bench_hopf(c: &mut Criterion) {
    let h = hopf::hopf_two_plus_tau();
    c.bench_function("hopf_axioms_2_plus_tau", |b| {
        b.iter(|| hopf::check_hopf_axioms(black_box(&h), 1e-9).unwrap())
    });
    c.bench_function("monad_from_2_plus_e", |b| {
        let h2e = hopf::hopf_two_plus_e();
        b.iter(|| monad::from_hopf_algebra(black_box(&h2e)).unwrap())
    });
}

fn bench_condense(c: &mut Criterion) {
    let reps3 = BraidedInput::new(
        builtin_ring(&CatalogKey::RepS3).unwrap(),
        builtin_twists(&CatalogKey::RepS3),
    )
    .unwrap();
    let a_plus_c = reps3.ring.parse_object("A+C").unwrap();
    c.bench_function("condense_rep_s3", |b| {
        b.iter(|| condense(black_box(&reps3), black_box(&a_plus_c)).unwrap())
    });
    let (ring, twists) = drinfeld_double_of_group(&FiniteGroup::s3()).unwrap();
    let ds3 = BraidedInput::new(ring, Some(twists)).unwrap();
    let a_plus_c = ds3.ring.parse_object("A+C").unwrap();
    c.bench_function("condense_double_s3", |b| {
        b.iter(|| condense(black_box(&ds3), black_box(&a_plus_c)).unwrap())
    });
}

fn bench_bimodules(c: &mut Criterion) {
    let labels = abelian::z2_bimodule_labels();
    c.bench_function("bimodule_table_z2", |b| {
        b.iter(|| {
            for (_, l) in &labels {
                for (_, r) in &labels {
                    black_box(abelian::bimodule_tensor(l, r, 1).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, bench_pentagon, bench_hopf, bench_condense, bench_bimodules);
criterion_main!(benches);
