use cocyclelab::cohomology::{h1, hn};
use cocyclelab::group::{cyclic_table, symmetric3_table, Group, Subgroup, Word};
use cocyclelab::induction::{coset_transversal, induction_h1_check, INDEX_CAP};
use cocyclelab::rep::Representation;
use cocyclelab::scalar::Rational;
use cocyclelab::stationarity::{cesaro_projection, CesaroOptions};
use cocyclelab_bench::{float_instance, rational_instance};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn first_cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("h1");
    for (label, g) in [("free-2", Group::free(2)), ("heisenberg", Group::heisenberg()), ("s3", Group::finite(symmetric3_table()))] {
        let (rho, _) = rational_instance(&g, 6, 7);
        group.bench_function(label, |b| b.iter(|| h1(black_box(&rho)).unwrap()));
    }
    group.finish();
}

fn bar_complex(c: &mut Criterion) {
    let g = Group::finite(cyclic_table(6));
    let (rho, _) = rational_instance(&g, 2, 3);
    c.bench_function("hn/c6-degree-2", |b| b.iter(|| hn(black_box(&rho), 2).unwrap()));
}

fn ergodic_projection(c: &mut Criterion) {
    let g = Group::free_abelian(2);
    let opts = CesaroOptions::default();
    let (exact, mu) = rational_instance(&g, 6, 11);
    c.bench_function("cesaro/exact-dim-6", |b| b.iter(|| cesaro_projection(black_box(&exact), &mu, opts).unwrap()));
    let (float, mu) = float_instance(&g, 6, 11);
    c.bench_function("cesaro/float-dim-6", |b| b.iter(|| cesaro_projection(black_box(&float), &mu, opts).unwrap()));
}

fn induction(c: &mut Criterion) {
    let f2 = Group::free(2);
    let (a, b) = (Word::generator(0), Word::generator(1));
    let gamma = Subgroup::new(&f2, vec![a.pow(3), b.clone(), a.mul(&b).mul(&a.inverse()), a.pow(2).mul(&b).mul(&a.pow(-2))], "Γ").unwrap();
    c.bench_function("transversal/f2-index-3", |bch| bch.iter(|| coset_transversal(&f2, black_box(&gamma), INDEX_CAP).unwrap()));
    let d = coset_transversal(&f2, &gamma, INDEX_CAP).unwrap();
    let base = Representation::<Rational>::trivial(&d.presented().group, 1);
    c.bench_function("induction-check/f2-index-3", |bch| bch.iter(|| induction_h1_check(black_box(&base), &d).unwrap()));
}

criterion_group!(benches, first_cohomology, bar_complex, ergodic_projection, induction);
criterion_main!(benches);
