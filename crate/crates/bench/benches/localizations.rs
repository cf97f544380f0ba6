use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use discoloc_bench::boolean_lattice;
use discoloc_core::model::{bijection_suite, colocalizations_via_op, enumerate_localizations, verify_model_axioms};
use discoloc_core::reflect::enumerate_replete_reflective;
use discoloc_core::FinCat;

fn chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_localizations/chain");
    for n in [3, 4, 5, 6] {
        let cat = FinCat::chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &cat, |b, cat| {
            b.iter(|| enumerate_localizations(cat).unwrap())
        });
    }
    group.finish();
}

fn lattices(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for k in [2, 3] {
        let cat = boolean_lattice(k);
        group.bench_with_input(BenchmarkId::new("reflective", k), &cat, |b, cat| {
            b.iter(|| enumerate_replete_reflective(cat))
        });
        group.bench_with_input(BenchmarkId::new("colocalizations_via_op", k), &cat, |b, cat| {
            b.iter(|| colocalizations_via_op(cat).unwrap())
        });
    }
    group.sample_size(10);
    let cat = boolean_lattice(3);
    group.bench_function("bijection_suite/3", |b| b.iter(|| bijection_suite(&cat).unwrap()));
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let cat = FinCat::chain(5);
    let poset = enumerate_localizations(&cat).unwrap();
    c.bench_function("verify_model_axioms/chain5", |b| {
        b.iter(|| poset.structures.iter().all(|m| verify_model_axioms(m).passes()))
    });
}

criterion_group!(benches, chains, lattices, axioms);
criterion_main!(benches);
