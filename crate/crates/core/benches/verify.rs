//! Benchmarks of the verification engine. The heavy loops scan independent
//! basis tuples, so the default `parallel` feature fans them out over
//! rayon; rebuilding the bench suite with `--no-default-features` runs the
//! identical workloads sequentially for comparison:
//!
//! ```text
//! cargo bench -p algebroid
//! cargo bench -p algebroid --no-default-features
//! ```

use algebroid::bialgebroid::{verify_translation_identities, Bialgebroid};
use algebroid::cotwist::{check_cocycle, cotwist, trivial_cocycle};
use algebroid::diffop::diff_bialgebroid;
use algebroid::jet::{jet_chain, jet_hopf_algebroid, pair_hopf_algebroid, pair_parts};
use algebroid::{fixtures, Field};
use criterion::{criterion_group, criterion_main, Criterion};

fn mini_jet() -> Bialgebroid {
    jet_hopf_algebroid(&fixtures::truncated_poly(3, Field::Q), 16).unwrap()
}

fn mini_gamma() -> Vec<Vec<algebroid::linalg::SparseVec>> {
    let b = fixtures::truncated_poly(3, Field::Q);
    let d = fixtures::xsq_dx_map(3, Field::Q);
    fixtures::moyal_gamma_matrix(&b, &d, &d, Field::Q.one())
}

fn bench_axiom_suite(c: &mut Criterion) {
    let parts = pair_parts(&fixtures::algebra_b3());
    c.bench_function("verify_pair_b3", |b| {
        b.iter(|| {
            let l = Bialgebroid::assemble(parts.clone());
            assert!(l.is_verified());
        })
    });

    let l = pair_hopf_algebroid(&fixtures::algebra_b3()).unwrap();
    let tm = l.translation().unwrap().clone();
    c.bench_function("translation_identities_b3", |b| {
        b.iter(|| {
            let rep = verify_translation_identities(&l, &tm);
            assert!(rep.all_passed());
        })
    });
}

fn bench_jet_chain(c: &mut Criterion) {
    let bm = fixtures::algebra_bm();
    c.bench_function("jet_chain_bm", |b| {
        b.iter(|| {
            let chain = jet_chain(&bm, 16).unwrap();
            assert_eq!(chain.stabilized().dim(), 0);
        })
    });
}

fn bench_cocycle(c: &mut Criterion) {
    let l = mini_jet();
    let gamma = mini_gamma();
    c.bench_function("certify_cocycle_mini", |b| {
        b.iter(|| {
            let cocycle = check_cocycle(&l, gamma.clone()).unwrap();
            std::hint::black_box(cocycle);
        })
    });

    let cocycle = check_cocycle(&l, gamma).unwrap();
    let mut group = c.benchmark_group("cotwist");
    group.sample_size(10);
    group.bench_function("cotwist_mini", |b| {
        b.iter(|| {
            let tw = cotwist(&l, &cocycle).unwrap();
            assert!(tw.is_verified());
        })
    });
    let triv = trivial_cocycle(&l);
    group.bench_function("cotwist_mini_trivial", |b| {
        b.iter(|| {
            let tw = cotwist(&l, &triv).unwrap();
            std::hint::black_box(tw);
        })
    });
    group.finish();
}

fn bench_diff(c: &mut Criterion) {
    let b2 = fixtures::algebra_b2();
    c.bench_function("diff_bialgebroid_b2", |b| {
        b.iter(|| {
            let da = diff_bialgebroid(&b2, 16).unwrap();
            assert_eq!(da.algebroid.dim(), 4);
        })
    });
}

criterion_group!(
    benches,
    bench_axiom_suite,
    bench_jet_chain,
    bench_cocycle,
    bench_diff
);
criterion_main!(benches);
