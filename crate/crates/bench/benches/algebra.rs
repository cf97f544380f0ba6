use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use discoloc_bench::matrix;
use discoloc_core::ktheory::{k0_group, k0_presentation, TruncatedAbelian, WeakEquivalences};
use discoloc_core::ring::{mult_map_is_iso, ring_homs};
use discoloc_core::snf::to_matrix;
use discoloc_core::{FiniteRing, RingHom, SmithForm};

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_form");
    for n in [4, 8, 16] {
        let m = to_matrix(&matrix(n, n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| SmithForm::new(m)));
    }
    group.finish();
}

fn rings(c: &mut Criterion) {
    let z2 = FiniteRing::zn(2).unwrap();
    let z12 = FiniteRing::zn(12).unwrap();
    let z2xz2 = FiniteRing::product(&[z2.clone(), z2.clone()]).unwrap();
    let eps = FiniteRing::polyquo(&z2, &[0, 0, 1]).unwrap();
    let cases = [("z12_z2", &z12, &z2), ("z2_z2xz2", &z2, &z2xz2), ("z2_eps", &z2, &eps)];
    let mut group = c.benchmark_group("mult_map_is_iso");
    for (name, r, s) in cases {
        let phi = RingHom::from_integers(r, s).unwrap();
        group.bench_function(name, |b| b.iter(|| mult_map_is_iso(r, s, &phi)));
    }
    group.finish();
    c.bench_function("ring_homs/z2xz2_z2xz2", |b| b.iter(|| ring_homs(&z2xz2, &z2xz2)));
}

fn k0(c: &mut Criterion) {
    let mut group = c.benchmark_group("k0/truncated");
    group.sample_size(10);
    for (p, bound) in [(2, 2), (2, 3), (3, 2)] {
        let t = TruncatedAbelian::build(p, bound, WeakEquivalences::Isomorphisms).unwrap();
        group.bench_function(format!("p{p}_bound{bound}"), |b| {
            b.iter(|| k0_group(&k0_presentation(&t)))
        });
    }
    group.finish();
}

criterion_group!(benches, smith, rings, k0);
criterion_main!(benches);
