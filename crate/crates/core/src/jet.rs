//! The pair Hopf algebroid `B ⊗ B̄`, the universal calculus and its powers,
//! jet spaces `J^k(B) = B^e / μ_k`, the jet Hopf algebroid of a commutative
//! base with stabilizing chain, the `J^k = B ⊕ Ω¹_k` splitting with the jet
//! prolongation, and first-order jets along an arbitrary sub-bimodule.

use crate::algebra::FiniteAlgebra;
use crate::bialgebroid::{
    check_hopf_ideal, quotient_hopf_algebroid, Bialgebroid, BialgebroidParts, HopfIdeal,
};
use crate::error::{Error, JetError};
use crate::linalg::{kernel_basis_in, normalize, sub, tensor, LinMap, QuotientSpace, SparseVec, Subspace};

/// Build the pair Hopf algebroid of an algebra: total `B^e`, source
/// `a ↦ a ⊗ 1`, target `a ↦ 1 ⊗ ā`, coproduct `(a ⊗ ā') ↦ (a⊗1) ⋄ (1⊗ā')`,
/// counit `(a ⊗ ā') ↦ aa'`. Fully verified.
pub fn pair_hopf_algebroid(b: &FiniteAlgebra) -> Result<Bialgebroid, Error> {
    Bialgebroid::build(pair_parts(b)).map_err(Into::into)
}

/// The raw parts of the pair algebroid, for tests that corrupt them.
pub fn pair_parts(b: &FiniteAlgebra) -> BialgebroidParts {
    let d = b.dim;
    let n = d * d;
    let total = b.enveloping();
    let source = LinMap::new(
        d,
        n,
        (0..d).map(|i| tensor(&b.basis_vec(i), &b.unit, d)).collect(),
    );
    let target = LinMap::new(
        d,
        n,
        (0..d).map(|i| tensor(&b.unit, &b.basis_vec(i), d)).collect(),
    );
    let coproduct = (0..n)
        .map(|x| {
            let (i, j) = (x / d, x % d);
            tensor(&source.cols[i], &target.cols[j], n)
        })
        .collect();
    let counit = LinMap::new(
        n,
        d,
        (0..n)
            .map(|x| b.mul_basis(x / d, x % d).clone())
            .collect(),
    );
    BialgebroidParts {
        total,
        base: b.clone(),
        source,
        target,
        coproduct,
        counit,
    }
}

/// The multiplication map `B^e → B` as a linear map.
pub fn multiplication_map(b: &FiniteAlgebra) -> LinMap {
    let d = b.dim;
    LinMap::new(
        d * d,
        d,
        (0..d * d).map(|x| b.mul_basis(x / d, x % d).clone()).collect(),
    )
}

/// Basis of the universal calculus `μ = ker(m : B^e → B)`.
pub fn universal_calculus(b: &FiniteAlgebra) -> Subspace {
    let m = multiplication_map(b);
    Subspace::span(b.dim * b.dim, kernel_basis_in(&m.to_matrix(), b.field))
}

/// `d a = 1 ⊗ ā − a ⊗ 1` inside `B^e`, extended linearly.
pub fn d_uni(b: &FiniteAlgebra, a: &SparseVec) -> SparseVec {
    let d = b.dim;
    normalize(sub(&tensor(&b.unit, a, d), &tensor(a, &b.unit, d)))
}

/// The descending chain `μ_k = B^e · { (d a_0) ⋯ (d a_k) }` together with
/// its stabilization index. `μ_0 = μ` is verified against the kernel of the
/// multiplication map.
#[derive(Debug, Clone)]
pub struct JetChain {
    pub env: FiniteAlgebra,
    pub mu: Subspace,
    /// `powers[k] = μ_k`; computed up to (and including) the first repeat.
    pub powers: Vec<Subspace>,
    /// First `k` with `μ_(k+1) = μ_k`.
    pub stabilized_at: usize,
}

impl JetChain {
    /// `μ_k`, saturating at the stabilized ideal.
    pub fn power(&self, k: usize) -> &Subspace {
        &self.powers[k.min(self.stabilized_at)]
    }

    pub fn stabilized(&self) -> &Subspace {
        &self.powers[self.stabilized_at]
    }
}

/// Compute the chain, failing when it does not stabilize within `cap`.
pub fn jet_chain(b: &FiniteAlgebra, cap: usize) -> Result<JetChain, JetError> {
    let env = b.enveloping();
    let n = env.dim;
    let mu = universal_calculus(b);

    // d-generator products: P_0 = span{d a}, P_{j+1} = span{P_j · d a}
    let d_gens: Vec<SparseVec> = (0..b.dim)
        .map(|i| d_uni(b, &b.basis_vec(i)))
        .filter(|v| !v.is_empty())
        .collect();
    let left_closure = |gens: &Subspace| -> Subspace {
        Subspace::span(
            n,
            (0..n).flat_map(|u| {
                gens.basis()
                    .iter()
                    .map(move |p| (u, p))
                    .collect::<Vec<_>>()
            })
            .map(|(u, p)| env.mul_vec(&env.basis_vec(u), p)),
        )
    };

    let mut p_k = Subspace::span(n, d_gens.iter().cloned());
    let mut powers: Vec<Subspace> = vec![left_closure(&p_k)];
    debug_assert_eq!(powers[0], mu, "μ_0 must equal ker(m)");
    let mut stabilized_at = None;
    for k in 0..cap {
        let next_p = Subspace::span(
            n,
            p_k.basis().iter().flat_map(|p| {
                d_gens
                    .iter()
                    .map(|g| env.mul_vec(p, g))
                    .collect::<Vec<_>>()
            }),
        );
        let next = left_closure(&next_p);
        if next == powers[k] {
            stabilized_at = Some(k);
            break;
        }
        powers.push(next);
        p_k = next_p;
    }
    let stabilized_at = stabilized_at.ok_or(JetError::NotStabilized { cap })?;
    Ok(JetChain {
        env,
        mu,
        powers,
        stabilized_at,
    })
}

/// A jet space `J^k(B) = B^e / μ_k` with its induced algebra structure
/// when the base is commutative.
#[derive(Debug, Clone)]
pub struct JetSpace {
    /// `None` encodes the stabilized (projective-limit) space.
    pub order: Option<usize>,
    pub space: QuotientSpace,
    pub algebra: Option<FiniteAlgebra>,
}

impl JetSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Present `J^k(B)`; for commutative `B` the quotient algebra is built and
/// validated.
pub fn jet_space(b: &FiniteAlgebra, chain: &JetChain, k: usize) -> JetSpace {
    let ideal = chain.power(k);
    let space = QuotientSpace::new(chain.env.dim, ideal.basis().iter().cloned());
    let algebra = b
        .commutative
        .then(|| quotient_algebra(&chain.env, &space, &format!("J^{k}({})", b.name)))
        .transpose()
        .expect("commutative base yields a two-sided ideal");
    JetSpace {
        order: Some(k),
        space,
        algebra,
    }
}

fn quotient_algebra(
    env: &FiniteAlgebra,
    space: &QuotientSpace,
    name: &str,
) -> Result<FiniteAlgebra, crate::error::AlgebraError> {
    let qd = space.dim();
    let f = env.field;
    let names = space
        .section
        .iter()
        .map(|&i| format!("[{}]", env.basis_names[i]))
        .collect();
    let mul = (0..qd)
        .map(|i| {
            (0..qd)
                .map(|j| {
                    let a = space.lift(&vec![(i, f.one())]);
                    let b = space.lift(&vec![(j, f.one())]);
                    space.project(&env.mul_vec(&a, &b))
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new(name, f, names, space.project(&env.unit), mul)
}

/// The jet Hopf algebroid `J(B) = B^e / μ_∞` of a commutative base whose
/// chain stabilizes: the stabilized ideal is checked as a Hopf ideal and the
/// quotient fully re-verified.
pub fn jet_hopf_algebroid(b: &FiniteAlgebra, cap: usize) -> Result<Bialgebroid, Error> {
    if !b.commutative {
        return Err(JetError::NotCommutative.into());
    }
    let chain = jet_chain(b, cap)?;
    let pair = pair_hopf_algebroid(b)?;
    let ideal = HopfIdeal {
        subspace: chain.stabilized().clone(),
    };
    let (ok, rep) = check_hopf_ideal(&pair, &ideal);
    if !ok {
        let fail = rep.first_failure().unwrap();
        return Err(crate::error::AlgebroidError::NotHopfIdeal {
            condition: fail.name.clone(),
            witness: fail.witness.clone().unwrap_or_default(),
        }
        .into());
    }
    quotient_hopf_algebroid(&pair, &ideal).map_err(Into::into)
}

/// The split presentation `J^k(B) = B ⊕ Ω¹_k(B)` with `Ω¹_k = μ / μ^(k+1)`,
/// the splitting projection, the inclusion, and the jet prolongation
/// `j_k(b) = [b ⊗ 1]`.
#[derive(Debug, Clone)]
pub struct JetSplitting {
    pub jet: JetSpace,
    /// Dimension of `Ω¹_k = μ / μ_k`.
    pub omega: QuotientSpace,
    /// `π : J^k → Ω¹_k` splitting the inclusion.
    pub pi: LinMap,
    /// `Ω¹_k → J^k`.
    pub incl: LinMap,
    /// `j_k : B → J^k`.
    pub prolong: LinMap,
}

/// Build and verify the splitting. `π` sends `[a ⊗ b]` to the class of
/// `(a⊗1 − 1⊗a)(1⊗b)`, which restricts to the identity on `Ω¹_k` and kills
/// the `[1 ⊗ B]` copy of the base.
pub fn jet_splitting(b: &FiniteAlgebra, chain: &JetChain, k: usize) -> Result<JetSplitting, Error> {
    if !b.commutative {
        return Err(JetError::NotCommutative.into());
    }
    let jet = jet_space(b, chain, k);
    splitting_for(b, chain, chain.power(k), jet)
}

fn splitting_for(
    b: &FiniteAlgebra,
    chain: &JetChain,
    ideal: &Subspace,
    jet: JetSpace,
) -> Result<JetSplitting, Error> {
    let env = &chain.env;
    let n = env.dim;
    let f = env.field;
    let mu_rref = chain.mu.clone();
    let mu_dim = mu_rref.dim();

    // relations of Ω¹ in μ-coordinates
    let rel_in_mu: Vec<SparseVec> = ideal
        .basis()
        .iter()
        .map(|v| {
            mu_coordinates(&mu_rref, v).ok_or_else(|| {
                Error::Internal("ideal vector outside the universal calculus".into())
            })
        })
        .collect::<Result<_, _>>()?;
    let omega = QuotientSpace::new(mu_dim, rel_in_mu);

    // π on ambient B^e: a ⊗ b ↦ (a⊗1)(1⊗b) − (1⊗a)(1⊗b)
    let pi_ambient = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (t, c) in v {
            let (i, j) = (t / b.dim, t % b.dim);
            let term = sub(
                &vec![(*t, f.one())],
                &tensor(&b.unit, b.mul_basis(i, j), b.dim),
            );
            out = normalize([out, crate::linalg::scale(&term, c)].concat());
        }
        out
    };

    let jd = jet.dim();
    let pi = LinMap::new(
        jd,
        omega.dim(),
        (0..jd)
            .map(|q| {
                let rep = jet.space.lift(&vec![(q, f.one())]);
                let in_mu = pi_ambient(&rep);
                let coords = mu_coordinates(&mu_rref, &in_mu)
                    .expect("splitting image lies in the universal calculus");
                omega.project(&coords)
            })
            .collect(),
    );
    let incl = LinMap::new(
        omega.dim(),
        jd,
        (0..omega.dim())
            .map(|w| {
                let coords = omega.lift(&vec![(w, f.one())]);
                let mut ambient = SparseVec::new();
                for (i, c) in &coords {
                    ambient = normalize(
                        [ambient, crate::linalg::scale(&mu_rref.basis()[*i], c)].concat(),
                    );
                }
                jet.space.project(&ambient)
            })
            .collect(),
    );
    let prolong = LinMap::new(
        b.dim,
        jd,
        (0..b.dim)
            .map(|i| jet.space.project(&tensor(&b.basis_vec(i), &b.unit, b.dim)))
            .collect(),
    );

    // π splits the inclusion and the dimensions add up
    let id_omega = pi.compose(&incl);
    if id_omega != LinMap::identity(omega.dim(), f) {
        return Err(Error::Internal("π ∘ incl is not the identity".into()));
    }
    if jd != b.dim + omega.dim() {
        return Err(Error::Internal(format!(
            "splitting dimension mismatch: {jd} != {} + {}",
            b.dim,
            omega.dim()
        )));
    }
    // j_k is a left module map with ε(j_k(b)) = b
    for i in 0..b.dim {
        for j in 0..b.dim {
            let lhs = prolong.apply(b.mul_basis(i, j));
            let s_i = jet
                .space
                .project(&tensor(&b.basis_vec(i), &b.unit, b.dim));
            let rhs = match &jet.algebra {
                Some(alg) => alg.mul_vec(&s_i, &prolong.cols[j]),
                None => {
                    let amb = env.mul_vec(
                        &tensor(&b.basis_vec(i), &b.unit, b.dim),
                        &jet.space.lift(&prolong.cols[j]),
                    );
                    jet.space.project(&amb)
                }
            };
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "prolongation is not left linear at ({i},{j})"
                )));
            }
        }
    }
    for i in 0..b.dim {
        let eps = multiplication_map(b).apply(&jet.space.lift(&prolong.cols[i]));
        if eps != b.basis_vec(i) {
            return Err(Error::Internal(format!("ε(j_k(e{i})) != e{i}")));
        }
    }
    let _ = n;
    Ok(JetSplitting {
        jet,
        omega,
        pi,
        incl,
        prolong,
    })
}

fn mu_coordinates(mu: &Subspace, v: &SparseVec) -> Option<SparseVec> {
    // Subspace basis is an rref; coordinates exist iff v lies in the span
    crate::linalg::rref_rows(mu.ambient_dim, mu.basis().iter().cloned()).coordinates(v)
}

/// A first-order jet along an arbitrary sub-bimodule `N ⊆ μ`:
/// `J¹(B) = B^e / N` with prolongation `j_1(a) = [a ⊗ 1]` and the left
/// module decomposition `J¹ = B ⊕ μ/N`.
#[derive(Debug, Clone)]
pub struct FirstOrderJet {
    pub space: QuotientSpace,
    pub prolong: LinMap,
    pub omega_dim: usize,
}

pub fn first_order_jet(
    b: &FiniteAlgebra,
    n_sub: &Subspace,
) -> Result<FirstOrderJet, Error> {
    let env = b.enveloping();
    let mu = universal_calculus(b);
    // N ⊆ μ and closed under both base actions (left multiplication by
    // s(a) = a⊗1 and t(a) = 1⊗ā)
    for (k, v) in n_sub.basis().iter().enumerate() {
        if !mu.contains(v) {
            return Err(JetError::NotSubBimodule(format!(
                "generator {k} outside the universal calculus"
            ))
            .into());
        }
        for i in 0..b.dim {
            let s_move = env.mul_vec(&tensor(&b.basis_vec(i), &b.unit, b.dim), v);
            let t_move = env.mul_vec(&tensor(&b.unit, &b.basis_vec(i), b.dim), v);
            if !n_sub.contains(&s_move) || !n_sub.contains(&t_move) {
                return Err(JetError::NotSubBimodule(format!(
                    "generator {k} not closed under base action {i}"
                ))
                .into());
            }
        }
    }
    let space = QuotientSpace::new(env.dim, n_sub.basis().iter().cloned());
    let prolong = LinMap::new(
        b.dim,
        space.dim(),
        (0..b.dim)
            .map(|i| space.project(&tensor(&b.basis_vec(i), &b.unit, b.dim)))
            .collect(),
    );
    let omega_dim = mu.dim() - n_sub.dim();
    if space.dim() != b.dim + omega_dim {
        return Err(Error::Internal(format!(
            "first-order decomposition mismatch: {} != {} + {omega_dim}",
            space.dim(),
            b.dim
        )));
    }
    Ok(FirstOrderJet {
        space,
        prolong,
        omega_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::add_scaled;
    use crate::scalar::Field;

    /// Independent oracle for commutative bases: `μ^(k+1)` as the span of
    /// (k+1)-fold products of kernel-basis elements, closed under
    /// multiplication by the enveloping algebra.
    fn ideal_power_oracle(b: &FiniteAlgebra, k: usize) -> Subspace {
        let env = b.enveloping();
        let n = env.dim;
        let mu = universal_calculus(b);
        let mut acc = mu.clone();
        for _ in 0..k {
            let products = acc.basis().iter().flat_map(|p| {
                mu.basis().iter().map(|q| env.mul_vec(p, q)).collect::<Vec<_>>()
            });
            acc = Subspace::span(n, products);
        }
        // close under the full algebra action (two-sided for commutative B)
        let closed = (0..n).flat_map(|u| {
            acc.basis()
                .iter()
                .map(|p| env.mul_vec(&env.basis_vec(u), p))
                .collect::<Vec<_>>()
        });
        Subspace::span(n, closed)
    }

    #[test]
    fn b2_universal_calculus() {
        let b2 = fixtures::algebra_b2();
        let mu = universal_calculus(&b2);
        assert_eq!(mu.dim(), 2);
        // d x = 1⊗x - x⊗1 and x⊗x span μ
        let dx = d_uni(&b2, &b2.basis_vec(1));
        assert!(mu.contains(&dx));
        assert!(mu.contains(&vec![(3, Field::Q.one())]));
    }

    #[test]
    fn b2_chain_dims_and_stabilization() {
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        assert_eq!(chain.power(0).dim(), 2);
        assert_eq!(chain.power(1).dim(), 1);
        assert_eq!(chain.power(2).dim(), 0);
        assert_eq!(chain.stabilized_at, 2);
        // μ² = span{x⊗x} since (dx)² = -2 x⊗x
        let dx = d_uni(&b2, &b2.basis_vec(1));
        let env = &chain.env;
        let dx_sq = env.mul_vec(&dx, &dx);
        assert_eq!(
            dx_sq,
            vec![(3usize, Field::Q.from_i64(-2))],
            "(dx)² = -2 x⊗x"
        );
        assert!(chain.power(1).contains(&vec![(3, Field::Q.one())]));

        // oracle route agrees on the commutative base
        for k in 0..3 {
            assert_eq!(chain.power(k).dim(), ideal_power_oracle(&b2, k).dim());
        }
    }

    #[test]
    fn b3_chain_stabilizes_immediately() {
        let b3 = fixtures::algebra_b3();
        let chain = jet_chain(&b3, 16).unwrap();
        assert_eq!(chain.mu.dim(), 6);
        assert_eq!(chain.stabilized_at, 0);
        assert_eq!(chain.stabilized().dim(), 6);
        assert_eq!(chain.power(5), chain.power(0));
    }

    #[test]
    fn bm_chain_reaches_zero() {
        let bm = fixtures::algebra_bm();
        let chain = jet_chain(&bm, 16).unwrap();
        assert_eq!(chain.mu.dim(), 72);
        assert_eq!(chain.stabilized().dim(), 0);
    }

    #[test]
    fn jet_space_dims_b2() {
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        assert_eq!(jet_space(&b2, &chain, 0).dim(), 2);
        assert_eq!(jet_space(&b2, &chain, 1).dim(), 3);
        assert_eq!(jet_space(&b2, &chain, 2).dim(), 4);
        assert_eq!(jet_space(&b2, &chain, 7).dim(), 4);
        // J⁰(B) ≅ B
        let j0 = jet_space(&b2, &chain, 0);
        assert!(j0.algebra.is_some());
        assert_eq!(j0.algebra.unwrap().dim, 2);
    }

    #[test]
    fn jet_hopf_algebroid_b2_is_pair() {
        let b2 = fixtures::algebra_b2();
        let j = jet_hopf_algebroid(&b2, 16).unwrap();
        assert_eq!(j.dim(), 4);
        assert!(j.is_verified());
    }

    #[test]
    fn jet_hopf_algebroid_b3_is_base() {
        // split base: μ_∞ = μ, so J(B3) is B3 itself
        let b3 = fixtures::algebra_b3();
        let j = jet_hopf_algebroid(&b3, 16).unwrap();
        assert_eq!(j.dim(), 3);
        assert!(j.is_verified());
    }

    #[test]
    fn noncommutative_rejected() {
        let ut2 = fixtures::algebra_ut2();
        assert!(matches!(
            jet_hopf_algebroid(&ut2, 16),
            Err(Error::Jet(JetError::NotCommutative))
        ));
    }

    #[test]
    fn splitting_dims_b2() {
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        let s1 = jet_splitting(&b2, &chain, 1).unwrap();
        assert_eq!(s1.omega.dim(), 1);
        assert_eq!(s1.jet.dim(), 3);
        let s2 = jet_splitting(&b2, &chain, 2).unwrap();
        assert_eq!(s2.omega.dim(), 2);
        assert_eq!(s2.jet.dim(), 4);
        let s5 = jet_splitting(&b2, &chain, 5).unwrap();
        assert_eq!(s5.omega.dim(), 2);
    }

    #[test]
    fn splitting_pi_of_prolongation_is_differential() {
        // π(j_k(b)) = class of b⊗1 − 1⊗b
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        let s = jet_splitting(&b2, &chain, 1).unwrap();
        let x = b2.basis_vec(1);
        let j_x = s.prolong.apply(&x);
        let pi_jx = s.pi.apply(&j_x);
        let d = b2.dim;
        let minus_dx = sub(&tensor(&x, &b2.unit, d), &tensor(&b2.unit, &x, d));
        let coords = super::mu_coordinates(&chain.mu, &normalize(minus_dx)).unwrap();
        assert_eq!(pi_jx, s.omega.project(&coords));
    }

    #[test]
    fn first_order_jet_consistency() {
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        // N = μ² reproduces jet_space(B2, 1)
        let j1 = first_order_jet(&b2, chain.power(1)).unwrap();
        assert_eq!(j1.space.dim(), 3);
        assert_eq!(j1.omega_dim, 1);
        // N = μ gives J¹ ≅ B
        let jb = first_order_jet(&b2, &chain.mu).unwrap();
        assert_eq!(jb.space.dim(), 2);
        assert_eq!(jb.omega_dim, 0);
    }

    #[test]
    fn first_order_jet_noncommutative_universal() {
        // ut2 with N = 0: J¹ = B^e and dim B^e = dim B + dim μ
        let ut2 = fixtures::algebra_ut2();
        let zero = Subspace::span(9, std::iter::empty());
        let j = first_order_jet(&ut2, &zero).unwrap();
        assert_eq!(j.space.dim(), 9);
        assert_eq!(j.omega_dim, 6);
    }

    #[test]
    fn first_order_jet_rejects_non_submodule() {
        let b2 = fixtures::algebra_b2();
        // span{dx} is not closed under multiplication by x⊗1
        let dx = d_uni(&b2, &b2.basis_vec(1));
        let n_bad = Subspace::span(4, vec![dx]);
        assert!(matches!(
            first_order_jet(&b2, &n_bad),
            Err(Error::Jet(JetError::NotSubBimodule(_)))
        ));
    }

    #[test]
    fn chain_is_monotone() {
        for alg in [
            fixtures::algebra_b2(),
            fixtures::algebra_b3(),
            fixtures::algebra_bm(),
        ] {
            let chain = jet_chain(&alg, 16).unwrap();
            for k in 1..chain.powers.len() {
                assert!(chain.powers[k].dim() <= chain.powers[k - 1].dim());
                // inclusion, not just dimension drop
                for v in chain.powers[k].basis() {
                    assert!(chain.powers[k - 1].contains(v));
                }
            }
        }
    }

    #[test]
    fn surjections_commute_with_counit() {
        // J^k ↠ J^{k-1} composed to J⁰ ≅ B agrees with ε of the pair algebroid
        let b2 = fixtures::algebra_b2();
        let chain = jet_chain(&b2, 16).unwrap();
        let j2 = jet_space(&b2, &chain, 2);
        let j1 = jet_space(&b2, &chain, 1);
        let j0 = jet_space(&b2, &chain, 0);
        let f = Field::Q;
        // the canonical surjection is project ∘ lift
        let down = |from: &JetSpace, to: &JetSpace, v: &SparseVec| -> SparseVec {
            to.space.project(&from.space.lift(v))
        };
        let m = multiplication_map(&b2);
        for q in 0..j2.dim() {
            let v = vec![(q, f.one())];
            let via_j1 = down(&j1, &j0, &down(&j2, &j1, &v));
            let direct = down(&j2, &j0, &v);
            assert_eq!(via_j1, direct);
            // ε through J⁰: J⁰ ≅ B via the multiplication map
            let eps = m.apply(&j2.space.lift(&v));
            let mut eps_via_j0 = SparseVec::new();
            for (i, c) in &direct {
                let rep = j0.space.lift(&vec![(*i, f.one())]);
                eps_via_j0 = add_scaled(&eps_via_j0, &m.apply(&rep), c);
            }
            assert_eq!(eps, eps_via_j0);
        }
    }
}
