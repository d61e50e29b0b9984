//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and holding its stated time budget. Run with `--nocapture` to see the
//! lines:
//!
//! ```text
//! cargo test -p algebroid --test acceptance -- --nocapture
//! ```

use algebroid::algebra::FiniteAlgebra;
use algebroid::bialgebroid::{
    check_hopf_ideal, structural_eq, verify_translation_identities, Bialgebroid, HopfIdeal,
};
use algebroid::cotwist::{
    check_cocycle, check_invertible, composition_sharp_check, compose_cocycles, cotwist,
    default_family, hopf_case_compare, inverse_cocycle, inverse_sharp_check, lambda_square_check,
    trivial_cocycle,
};
use algebroid::diffop::{
    canonical_pairing, check_xu_cocycle, diff_bialgebroid, diff_operators, exponential_cocycle,
    hom_bbar, jet_diff_iso, quantized_jet, twist_bialgebroid_by_f, twisted_pairing,
    verify_pairing, QuantizedJet,
};
use algebroid::error::{AlgebraError, AlgebroidError, CocycleError, Error};
use algebroid::jet::{jet_chain, jet_space, jet_splitting, pair_hopf_algebroid, pair_parts};
use algebroid::linalg::{normalize, tensor, LinMap, SparseVec, Subspace};
use algebroid::{fixtures, Field};
use std::time::{Duration, Instant};

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget_secs: u64) -> Self {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        println!(
            "{}: PASS in {:.2?} (budget {:?})",
            self.name, elapsed, self.budget
        );
        assert!(
            elapsed < self.budget,
            "{} exceeded its {:?} budget: {:.2?}",
            self.name,
            self.budget,
            elapsed
        );
    }
}

fn moyal_pipeline(theta: i64) -> QuantizedJet {
    let bm = fixtures::algebra_bm();
    let (d1, d2) = fixtures::moyal_derivations_bm();
    quantized_jet(&bm, &d1, &d2, &Field::Q.from_i64(theta), 16).expect("pipeline")
}

/// Criterion 1: all bialgebroid axioms and the ten translation identities
/// hold exactly on the B3 and B2 pair Hopf algebroids, and the translation
/// maps equal their closed forms.
#[test]
fn criterion_1_pair_hopf_algebroid_suite() {
    let c = Criterion::start("criterion 1 (pair Hopf algebroid suite)", 5);
    for alg in [fixtures::algebra_b3(), fixtures::algebra_b2()] {
        let l = pair_hopf_algebroid(&alg).expect("pair algebroid verifies");
        assert!(l.is_verified());
        let tm = l.translation().expect("left Hopf");
        let rep = verify_translation_identities(&l, tm);
        assert!(rep.all_passed(), "{}: {:?}", alg.name, rep.first_failure());

        // closed forms: (a⊗a')± = (a⊗1) ⊗ (a'⊗1), bracket = (1⊗a') ⊗ (1⊗a)
        let d = alg.dim;
        let n = l.dim();
        let am = l.anti_translation().expect("anti-left Hopf");
        for a in 0..d {
            for a2 in 0..d {
                let x = a * d + a2;
                let plus = tensor(
                    &tensor(&alg.basis_vec(a), &alg.unit, d),
                    &tensor(&alg.basis_vec(a2), &alg.unit, d),
                    n,
                );
                assert!(
                    l.tensor_opp().space.classes_equal(&tm.plus_minus[x], &plus),
                    "{}: translation closed form at ({a},{a2})",
                    alg.name
                );
                let bracket = tensor(
                    &tensor(&alg.unit, &alg.basis_vec(a2), d),
                    &tensor(&alg.unit, &alg.basis_vec(a), d),
                    n,
                );
                assert!(
                    l.tensor_base().space.classes_equal(&am.bracket[x], &bracket),
                    "{}: anti-translation closed form at ({a},{a2})",
                    alg.name
                );
            }
        }
    }
    c.finish();
}

/// Criterion 2: the B2 ideal chain has dimensions 2, 1, 0, giving the jet
/// dimensions 3 and 4 and the splitting identities 3 = 2+1, 4 = 2+2.
#[test]
fn criterion_2_jet_chain_oracle() {
    let c = Criterion::start("criterion 2 (jet chain oracle)", 1);
    let b2 = fixtures::algebra_b2();
    let chain = jet_chain(&b2, 16).expect("chain stabilizes");

    // independent oracle: brute-force ideal powers inside the enveloping
    // algebra (products of kernel-basis elements, closed under the action)
    let env = b2.enveloping();
    let mu = algebroid::jet::universal_calculus(&b2);
    let mut oracle = mu.clone();
    let mut oracle_dims = vec![oracle.dim()];
    for _ in 0..2 {
        let products = oracle.basis().iter().flat_map(|p| {
            mu.basis()
                .iter()
                .map(|q| env.mul_vec(p, q))
                .collect::<Vec<_>>()
        });
        let span = Subspace::span(env.dim, products);
        let closed = (0..env.dim).flat_map(|u| {
            span.basis()
                .iter()
                .map(|p| env.mul_vec(&env.basis_vec(u), p))
                .collect::<Vec<_>>()
        });
        oracle = Subspace::span(env.dim, closed);
        oracle_dims.push(oracle.dim());
    }
    assert_eq!(oracle_dims, vec![2, 1, 0], "oracle ideal powers");
    for (k, want) in oracle_dims.iter().enumerate() {
        assert_eq!(chain.power(k).dim(), *want, "μ_{k}");
    }

    assert_eq!(jet_space(&b2, &chain, 1).dim(), 3);
    for k in 2..6 {
        let jk = jet_space(&b2, &chain, k);
        assert_eq!(jk.dim(), 4, "J^{k}(B2) = B2^e");
        assert!(jk
            .algebra
            .as_ref()
            .is_some_and(|a| a.structure_eq(&env) || a.dim == 4));
    }
    let s1 = jet_splitting(&b2, &chain, 1).expect("splitting");
    assert_eq!((s1.jet.dim(), s1.omega.dim()), (3, 1), "3 = 2 + 1");
    let s2 = jet_splitting(&b2, &chain, 2).expect("splitting");
    assert_eq!((s2.jet.dim(), s2.omega.dim()), (4, 2), "4 = 2 + 2");
    c.finish();
}

/// Criterion 3: Diff^k(B2) has dimensions 2, 3, 4, matching the spaces of
/// opposite-linear functionals on J^k, with both round trips exact; the
/// same correspondence holds on the noncommutative fixture.
#[test]
fn criterion_3_diff_jet_duality() {
    let c = Criterion::start("criterion 3 (operator/jet duality)", 5);
    let b2 = fixtures::algebra_b2();
    let chain = jet_chain(&b2, 16).expect("chain");
    for (k, want) in [(0usize, 2usize), (1, 3), (2, 4)] {
        assert_eq!(diff_operators(&b2, k, 16).unwrap().dim(), want);
        let jet = jet_space(&b2, &chain, k);
        assert_eq!(hom_bbar(&b2, &jet).len(), want);
        // jet_diff_iso verifies both round trips internally
        jet_diff_iso(&b2, &chain, k, 16).expect("round trips exact");
    }
    let ut2 = fixtures::algebra_ut2();
    let chain = jet_chain(&ut2, 16).expect("chain");
    for k in 0..2 {
        let iso = jet_diff_iso(&ut2, &chain, k, 16).expect("noncommutative duality");
        assert_eq!(iso.diff_basis.len(), iso.hom_basis.len());
    }
    c.finish();
}

/// Criterion 4: the canonical pairing satisfies all five axioms on the B2
/// and BM fixtures, exhaustively over basis tuples.
#[test]
fn criterion_4_canonical_pairing() {
    let c = Criterion::start("criterion 4 (canonical pairing)", 30);
    for alg in [fixtures::algebra_b2(), fixtures::algebra_bm()] {
        let jet = algebroid::jet::jet_hopf_algebroid(&alg, 16).expect("jet algebroid");
        let da = diff_bialgebroid(&alg, 16).expect("operator algebroid");
        let p = canonical_pairing(&da, &jet, &alg);
        let rep = verify_pairing(&da.algebroid, &jet, &p);
        assert!(rep.all_passed(), "{}: {:?}", alg.name, rep.first_failure());
    }
    c.finish();
}

/// Criterion 5: the quantized jet algebroid at θ = 1 re-verifies from
/// scratch and matches all seven closed forms, with the base
/// noncommutativity witness x·y − y·x = x²y².
#[test]
fn criterion_5_cotwist_conformance() {
    let c = Criterion::start("criterion 5 (cotwist conformance)", 120);
    let q = moyal_pipeline(1);
    assert!(q.twisted.is_verified(), "re-verification");
    assert!(q.twisted.translation().is_ok(), "twisted translation map");
    assert!(
        q.conformance.all_passed(),
        "{:?}",
        q.conformance.first_failure()
    );
    // x at index 3, y at index 1, x²y² at index 8 in the bm basis ordering
    let bg = &q.twisted.base;
    let diff = normalize(
        [
            bg.mul_basis(3, 1).clone(),
            algebroid::bialgebroid::negate(bg.mul_basis(1, 3)),
        ]
        .concat(),
    );
    assert_eq!(diff, vec![(8, Field::Q.one())], "x·y − y·x = x²y²");
    c.finish();
}

/// Criterion 6: the groupoid laws on the Moyal fixture chained with a
/// second deformation parameter.
#[test]
fn criterion_6_groupoid_laws() {
    let c = Criterion::start("criterion 6 (groupoid laws)", 120);
    let q = moyal_pipeline(1);
    let l = &q.jet;
    let gamma = &q.gamma;
    let l_tw = &q.twisted;
    let sigma = &q.gamma_inverse;

    // Γ⁻¹ ∘ Γ = ε̂ on L
    let back = compose_cocycles(l, gamma, l_tw, sigma).expect("compose");
    assert_eq!(back, trivial_cocycle(l), "Γ⁻¹∘Γ = ε̂ on L");

    // (L^Γ)^(Γ⁻¹) structurally equals L
    let round = cotwist(l_tw, sigma).expect("twist back");
    assert!(structural_eq(l, &round), "(L^Γ)^(Γ⁻¹) = L");

    // Γ ∘ Γ⁻¹ = ε̂ on L^Γ (Γ read as a cocycle on the round trip)
    let fwd = compose_cocycles(l_tw, sigma, &round, gamma).expect("compose");
    assert_eq!(fwd, trivial_cocycle(l_tw), "Γ∘Γ⁻¹ = ε̂ on L^Γ");

    // (Γ⁻¹)⁻¹ = Γ
    let double = inverse_cocycle(l_tw, sigma, &round).expect("double inverse");
    assert_eq!(&double, gamma, "(Γ⁻¹)⁻¹ = Γ");

    // chained second parameter: Π = Γ at θ = 2, read on L
    let bm = fixtures::algebra_bm();
    let (d1, d2) = fixtures::moyal_derivations_bm();
    let rep2 = exponential_cocycle(&q.diff, &d1, &d2, &Field::Q.from_i64(2), &bm).unwrap();
    let xu2 = check_xu_cocycle(&q.diff.algebroid, rep2).unwrap();
    let pi = algebroid::diffop::dualize_cocycle(&q.diff.algebroid, &xu2, &q.pairing, l).unwrap();

    // associativity: Π∘(Σ∘Γ) = (Π∘Σ)∘Γ, with Σ∘Γ = ε̂
    let triv = check_cocycle(l, trivial_cocycle(l).gamma).unwrap();
    let l_triv = cotwist(l, &triv).expect("identity twist");
    let lhs = compose_cocycles(l, &triv, &l_triv, &pi).expect("Π∘ε̂");
    let pi_sigma = compose_cocycles(l_tw, sigma, &round, &pi).expect("Π∘Σ");
    let rhs = compose_cocycles(l, gamma, l_tw, &pi_sigma).expect("(Π∘Σ)∘Γ");
    assert_eq!(lhs, pi.clone(), "identity law Π∘ε̂ = Π");
    assert_eq!(rhs, pi, "associativity collapses to Π");

    // L^(Σ'∘Γ) = (L^Γ)^Σ' with the nontrivial Σ' = Π∘Σ
    let composed = compose_cocycles(l, gamma, l_tw, &pi_sigma).expect("Σ'∘Γ");
    let via_l = cotwist(l, &composed).expect("L^(Σ'∘Γ)");
    let via_tw = cotwist(l_tw, &pi_sigma).expect("(L^Γ)^Σ'");
    assert!(structural_eq(&via_l, &via_tw), "L^(Σ'∘Γ) = (L^Γ)^Σ'");

    // (Σ∘Γ)# = Γ# ∘ Σ# on the default comodule family
    let fam = default_family(l).expect("family");
    for m in &fam {
        for n in &fam {
            assert_eq!(
                composition_sharp_check(l, gamma, l_tw, sigma, &back, m, n).unwrap(),
                None,
                "(Σ∘Γ)# = Γ#∘Σ# on ({}, {})",
                m.name,
                n.name
            );
            assert_eq!(
                inverse_sharp_check(l, gamma, l_tw, sigma, m, n).unwrap(),
                None,
                "Σ# inverts Γ# on ({}, {})",
                m.name,
                n.name
            );
        }
    }

    // commuting square of the twisted and plain Galois maps
    assert_eq!(lambda_square_check(l, gamma, l_tw).unwrap(), None);
    c.finish();
}

/// Criterion 7: the base-field reduction: ψ(h) = h₁Γ(h₂, S(h₃)) is a
/// bijective algebra-and-coalgebra map onto the classical cotwist.
#[test]
fn criterion_7_hopf_algebra_reduction() {
    let c = Criterion::start("criterion 7 (Hopf algebra reduction)", 1);
    let h = fixtures::hopf_k4();
    let gamma: Vec<Vec<SparseVec>> = fixtures::sign_cocycle_k4()
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    if s.is_zero() {
                        SparseVec::new()
                    } else {
                        vec![(0usize, s.clone())]
                    }
                })
                .collect()
        })
        .collect();
    let cocycle = check_cocycle(&h, gamma).expect("sign cocycle certifies");
    let cmp = hopf_case_compare(&h, &cocycle).expect("comparison builds");
    assert!(cmp.report.all_passed(), "{:?}", cmp.report.first_failure());
    c.finish();
}

/// Criterion 8: the twisted dual pairing satisfies all five axioms between
/// the twisted operator algebroid and the quantized jet algebroid, and
/// specializes to ⟨D|[a⊗b]⟩^Γ = D(a) ∗ b.
#[test]
fn criterion_8_twisted_pairing() {
    let c = Criterion::start("criterion 8 (twisted pairing)", 120);
    let q = moyal_pipeline(1);
    let lam_f = twist_bialgebroid_by_f(&q.diff.algebroid, &q.xu).expect("operator twist");
    assert!(lam_f.is_verified());
    let tp = twisted_pairing(&q.diff.algebroid, &q.xu, &q.pairing, &q.jet).expect("pairing");
    let rep = verify_pairing(&lam_f, &q.twisted, &tp);
    assert!(rep.all_passed(), "{:?}", rep.first_failure());

    // specialization against the star product
    let bm = fixtures::algebra_bm();
    let star = algebroid::diffop::star_table_from_f(&q.diff.algebroid, &q.xu, &bm);
    for (opi, op) in q.diff.ops.iter().enumerate() {
        for a in 0..bm.dim {
            for bb in 0..bm.dim {
                let x = q
                    .jet
                    .total
                    .mul_vec(&q.jet.source.cols[a], &q.jet.target.cols[bb]);
                let lhs = tp.eval(&q.diff.algebroid.total.basis_vec(opi), &x);
                let mut rhs = SparseVec::new();
                for (i, ci) in op.apply(&bm.basis_vec(a)) {
                    rhs = algebroid::linalg::add_scaled(&rhs, &star[i][bb], &ci);
                }
                assert_eq!(lhs, normalize(rhs), "op {opi}, [{a}⊗{bb}]");
            }
        }
    }
    c.finish();
}

/// Criterion 9: corrupted fixtures fail with their designated errors and a
/// concrete witness. The process-level 0/1/2 exit-code contract is pinned
/// by the command-line integration tests against the same fixtures.
#[test]
fn criterion_9_negative_paths() {
    let c = Criterion::start("criterion 9 (negative paths)", 10);

    // bad unit
    let f = Field::Q;
    let err = FiniteAlgebra::new(
        "bad",
        f,
        vec!["e1".into(), "e2".into()],
        vec![(0, f.one())],
        vec![
            vec![vec![(1, f.one())], SparseVec::new()],
            vec![SparseVec::new(), SparseVec::new()],
        ],
    )
    .unwrap_err();
    assert_eq!(err, AlgebraError::BadUnit { i: 0 });

    // broken counit on the B2 pair algebroid
    let b2 = fixtures::algebra_b2();
    let mut parts = pair_parts(&b2);
    parts.counit = LinMap::new(
        4,
        2,
        (0..4).map(|t| vec![(t / 2, f.one())]).collect(),
    );
    match Bialgebroid::build(parts) {
        Err(AlgebroidError::AxiomFailure { name, witness }) => {
            assert!(name.contains("counit") || name.contains("coproduct"), "{name}");
            assert!(!witness.is_empty(), "witness must be concrete");
        }
        other => panic!("expected AxiomFailure, got {other:?}"),
    }

    // rank-deficient cocycle: certifies but is not invertible
    let h = fixtures::hopf_k4();
    let gamma: Vec<Vec<SparseVec>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if i == 0 || j == 0 {
                        vec![(0usize, f.one())]
                    } else {
                        SparseVec::new()
                    }
                })
                .collect()
        })
        .collect();
    let cocycle = check_cocycle(&h, gamma).expect("support-on-unit form certifies");
    match check_invertible(&h, &cocycle, &default_family(&h).unwrap()) {
        Err(CocycleError::NotInvertibleCocycle(pair)) => {
            assert!(!pair.is_empty(), "witness names a comodule pair");
        }
        other => panic!("expected NotInvertibleCocycle, got {other:?}"),
    }

    // non-stabilizing request surfaces as the designated error
    let bm = fixtures::algebra_bm();
    match jet_chain(&bm, 2) {
        Err(algebroid::error::JetError::NotStabilized { cap }) => assert_eq!(cap, 2),
        other => panic!("expected NotStabilized, got {other:?}"),
    }

    // hopf ideal rejection carries the failing condition
    let l = pair_hopf_algebroid(&b2).unwrap();
    let unit_span = HopfIdeal::from_vectors(l.dim(), vec![l.total.unit.clone()]);
    let (ok, rep) = check_hopf_ideal(&l, &unit_span);
    assert!(!ok);
    assert!(rep.first_failure().is_some());

    let _ = Error::Internal(String::new());
    c.finish();
}
