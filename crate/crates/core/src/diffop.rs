//! Differential operators through the commutator calculus, their duality
//! with jet spaces, the bialgebroid of all differential operators over a
//! commutative base, canonical and twisted dual pairings, cocycles inside a
//! bialgebroid and their dualization, and the quantized jet construction.

use crate::algebra::FiniteAlgebra;
use crate::bialgebroid::{Bialgebroid, BialgebroidParts};
use crate::cotwist::{
    check_cocycle, check_invertible, cotwist, default_family, inverse_cocycle, Cocycle,
};
use crate::error::{DualityError, Error, JetError};
use crate::jet::{jet_chain, jet_hopf_algebroid, jet_space, JetChain, JetSpace};
use crate::linalg::{
    add_scaled, invert_map, kernel_basis_in, normalize, rref_rows, solve_many, sub, tensor, LinMap,
    Matrix, QuotientSpace, SparseVec, Subspace,
};
use crate::par;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;

/// Flatten an endomorphism into coordinates: entry `(r, c)` at `r*dim + c`.
pub fn flatten_op(op: &LinMap) -> SparseVec {
    let dim = op.src;
    let mut out = SparseVec::new();
    for (c, col) in op.cols.iter().enumerate() {
        for (r, v) in col {
            out.push((r * dim + c, v.clone()));
        }
    }
    normalize(out)
}

pub fn unflatten_op(v: &SparseVec, dim: usize) -> LinMap {
    let mut cols = vec![SparseVec::new(); dim];
    for (t, c) in v {
        let (r, col) = (t / dim, t % dim);
        cols[col].push((r, c.clone()));
    }
    LinMap::new(dim, dim, cols.into_iter().map(normalize).collect())
}

/// `δ_b(D)(a) = D(a) b − D(a b)`, the commutator of `D` with right
/// multiplication.
pub fn delta_op(alg: &FiniteAlgebra, b: &SparseVec, d: &LinMap) -> LinMap {
    let rb = alg.right_mul_map(b);
    let left = rb.compose(d);
    let right = d.compose(&rb);
    LinMap::new(
        alg.dim,
        alg.dim,
        (0..alg.dim)
            .map(|c| normalize(sub(&left.cols[c], &right.cols[c])))
            .collect(),
    )
}

/// δ_b as a linear map on flattened endomorphism coordinates.
fn delta_flat(alg: &FiniteAlgebra, b: usize) -> LinMap {
    let dim = alg.dim;
    let bv = alg.basis_vec(b);
    LinMap::new(
        dim * dim,
        dim * dim,
        (0..dim * dim)
            .map(|t| {
                let e = unflatten_op(&vec![(t, alg.field.one())], dim);
                flatten_op(&delta_op(alg, &bv, &e))
            })
            .collect(),
    )
}

/// The filtration `Diff^0 ⊆ Diff^1 ⊆ …` of differential operators, each
/// level computed as the preimage of the previous one under every `δ_b`.
pub fn diff_filtration(
    alg: &FiniteAlgebra,
    cap: usize,
) -> Result<(Vec<Subspace>, usize), JetError> {
    let dim = alg.dim;
    let deltas: Vec<LinMap> = (0..dim).map(|b| delta_flat(alg, b)).collect();
    let stack_kernel = |constraint: &dyn Fn(usize, usize) -> SparseVec,
                        out_dim: usize|
     -> Subspace {
        // rows indexed by (b, output coordinate)
        let mut rows = Vec::new();
        for b in 0..dim {
            let mut per_out: Vec<SparseVec> = vec![SparseVec::new(); out_dim];
            for t in 0..dim * dim {
                for (o, v) in constraint(b, t) {
                    per_out[o].push((t, v));
                }
            }
            rows.extend(per_out.into_iter().map(normalize));
        }
        Subspace::span(dim * dim, kernel_basis_in(&Matrix::from_rows(dim * dim, rows), alg.field))
    };

    let diff0 = stack_kernel(&|b, t| deltas[b].cols[t].clone(), dim * dim);
    let mut levels = vec![diff0];
    let mut stabilized = None;
    for k in 0..cap {
        let prev = QuotientSpace::new(dim * dim, levels[k].basis().iter().cloned());
        let next = stack_kernel(&|b, t| prev.project(&deltas[b].cols[t]), prev.dim());
        if next == levels[k] {
            stabilized = Some(k);
            break;
        }
        levels.push(next);
    }
    let stabilized = stabilized.ok_or(JetError::NotStabilized { cap })?;
    Ok((levels, stabilized))
}

/// `Diff^k(B)` as a subspace of flattened endomorphisms.
pub fn diff_operators(alg: &FiniteAlgebra, k: usize, cap: usize) -> Result<Subspace, JetError> {
    let (levels, stab) = diff_filtration(alg, cap)?;
    Ok(levels[k.min(stab)].clone())
}

/// Left `B̄`-linear maps `J^k(B) → B`: solutions of `φ(t(b) ξ) = φ(ξ) b` on
/// all basis pairs. Returns a basis of coefficient matrices (flattened
/// `B × J` with the `(r, q)` entry at `r*jdim + q`).
pub fn hom_bbar(b: &FiniteAlgebra, jet: &JetSpace) -> Vec<SparseVec> {
    let d = b.dim;
    let jd = jet.dim();
    let env = b.enveloping();
    let unknowns = d * jd;
    let mut rows: Vec<SparseVec> = Vec::new();
    for bb in 0..d {
        let t_map = env.left_mul_map(&tensor(&b.unit, &b.basis_vec(bb), d));
        for q in 0..jd {
            let moved = jet
                .space
                .project(&t_map.apply(&jet.space.lift(&vec![(q, b.field.one())])));
            for out in 0..d {
                let mut row = SparseVec::new();
                for (qq, c) in &moved {
                    row.push((out * jd + qq, c.clone()));
                }
                // subtract (φ(e_q) b)[out] = Σ_r φ[r][q] (e_r e_b)[out]
                for r in 0..d {
                    if let Some(c) = crate::linalg::get(b.mul_basis(r, bb), out) {
                        row.push((r * jd + q, c.neg()));
                    }
                }
                rows.push(normalize(row));
            }
        }
    }
    kernel_basis_in(&Matrix::from_rows(unknowns, rows), b.field)
}

/// The two directions of the operator/jet correspondence for one order,
/// with exact round trips.
pub struct JetDiffIso {
    pub diff_basis: Vec<LinMap>,
    pub hom_basis: Vec<SparseVec>,
    pub jet: JetSpace,
}

/// Build and verify `Diff^k(B) ≅ Hom_B̄(J^k(B), B)`: dimension equality and
/// both round trips on basis elements.
pub fn jet_diff_iso(
    b: &FiniteAlgebra,
    chain: &JetChain,
    k: usize,
    cap: usize,
) -> Result<JetDiffIso, Error> {
    let diff = diff_operators(b, k, cap)?;
    let jet = jet_space(b, chain, k);
    let hom = hom_bbar(b, &jet);
    if diff.dim() != hom.len() {
        return Err(DualityError::FactorizationFailure(format!(
            "dim Diff^{k} = {} but dim Hom = {}",
            diff.dim(),
            hom.len()
        ))
        .into());
    }
    let d = b.dim;
    let jd = jet.dim();
    let ops: Vec<LinMap> = diff.basis().iter().map(|v| unflatten_op(v, d)).collect();

    // φ_D([a ⊗ b]) = D(a) b must kill the jet ideal
    let phi_of = |op: &LinMap| -> Result<LinMap, Error> {
        for gen in chain.power(k).basis() {
            let mut acc = SparseVec::new();
            for (t, c) in gen {
                let (a, bb) = (t / d, t % d);
                acc = add_scaled(
                    &acc,
                    &b.mul_vec(&op.apply(&b.basis_vec(a)), &b.basis_vec(bb)),
                    c,
                );
            }
            if !acc.is_empty() {
                return Err(DualityError::FactorizationFailure(
                    "operator does not kill the jet ideal".into(),
                )
                .into());
            }
        }
        Ok(LinMap::new(
            jd,
            d,
            (0..jd)
                .map(|q| {
                    let rep = jet.space.lift(&vec![(q, b.field.one())]);
                    let mut acc = SparseVec::new();
                    for (t, c) in &rep {
                        let (a, bb) = (t / d, t % d);
                        acc = add_scaled(
                            &acc,
                            &b.mul_vec(&op.apply(&b.basis_vec(a)), &b.basis_vec(bb)),
                            c,
                        );
                    }
                    acc
                })
                .collect(),
        ))
    };
    let d_of = |phi: &LinMap| -> LinMap {
        LinMap::new(
            d,
            d,
            (0..d)
                .map(|a| phi.apply(&jet.space.project(&tensor(&b.basis_vec(a), &b.unit, d))))
                .collect(),
        )
    };

    for op in &ops {
        let phi = phi_of(op)?;
        let back = d_of(&phi);
        if back != *op {
            return Err(DualityError::FactorizationFailure(
                "operator round trip is not the identity".into(),
            )
            .into());
        }
    }
    for coeffs in &hom {
        let phi = LinMap::new(
            jd,
            d,
            (0..jd)
                .map(|q| {
                    (0..d)
                        .filter_map(|r| {
                            crate::linalg::get(coeffs, r * jd + q).map(|c| (r, c.clone()))
                        })
                        .collect()
                })
                .collect(),
        );
        let op = d_of(&phi);
        let phi_back = phi_of(&op)?;
        if phi_back != phi {
            return Err(DualityError::FactorizationFailure(
                "functional round trip is not the identity".into(),
            )
            .into());
        }
    }
    Ok(JetDiffIso {
        diff_basis: ops,
        hom_basis: hom,
        jet,
    })
}

/// The algebra of all differential operators of a commutative base, as a
/// verified left bialgebroid with the coproduct solved from its action.
pub struct DiffAlgebroid {
    pub algebroid: Bialgebroid,
    /// Basis operators, aligned with the algebroid's total basis.
    pub ops: Vec<LinMap>,
    pub filtration_dims: Vec<usize>,
    pub stabilized_at: usize,
}

impl DiffAlgebroid {
    /// Coordinates of an endomorphism in the operator basis, when it lies
    /// in the stabilized filtration.
    pub fn coordinates(&self, op: &LinMap) -> Option<SparseVec> {
        let dim = op.src;
        let flat = flatten_op(op);
        rref_rows(dim * dim, self.ops.iter().map(flatten_op)).coordinates(&flat)
    }
}

pub fn diff_bialgebroid(b: &FiniteAlgebra, cap: usize) -> Result<DiffAlgebroid, Error> {
    if !b.commutative {
        return Err(JetError::NotCommutative.into());
    }
    let (levels, stab) = diff_filtration(b, cap)?;
    let total_space = &levels[stab];
    let ops: Vec<LinMap> = total_space
        .basis()
        .iter()
        .map(|v| unflatten_op(v, b.dim))
        .collect();
    let nd = ops.len();
    let coords_rref = rref_rows(b.dim * b.dim, total_space.basis().iter().cloned());
    let coords_of = |op: &LinMap| -> Result<SparseVec, Error> {
        coords_rref
            .coordinates(&flatten_op(op))
            .ok_or_else(|| Error::Internal("operator outside the stabilized filtration".into()))
    };

    let mul: Vec<Vec<SparseVec>> = (0..nd)
        .map(|i| {
            (0..nd)
                .map(|j| coords_of(&ops[i].compose(&ops[j])))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let unit = coords_of(&LinMap::identity(b.dim, b.field))?;
    let total = FiniteAlgebra::new(
        format!("Diff({})", b.name),
        b.field,
        (0..nd).map(|i| format!("D{i}")).collect(),
        unit,
        mul,
    )
    .map_err(|e| Error::Internal(format!("operator algebra failed validation: {e}")))?;

    let source = LinMap::new(
        b.dim,
        nd,
        (0..b.dim)
            .map(|a| coords_of(&b.left_mul_map(&b.basis_vec(a))))
            .collect::<Result<_, _>>()?,
    );
    let target = LinMap::new(
        b.dim,
        nd,
        (0..b.dim)
            .map(|a| coords_of(&b.right_mul_map(&b.basis_vec(a))))
            .collect::<Result<_, _>>()?,
    );
    let counit = LinMap::new(nd, b.dim, (0..nd).map(|i| ops[i].apply(&b.unit)).collect());

    // the diamond quotient and Takeuchi subspace depend only on the ring
    // data, so assemble with a placeholder coproduct first
    let scaffold = Bialgebroid::assemble(BialgebroidParts {
        total: total.clone(),
        base: b.clone(),
        source: source.clone(),
        target: target.clone(),
        coproduct: vec![SparseVec::new(); nd],
        counit: counit.clone(),
    });
    let takeuchi = scaffold.takeuchi_subspace();
    let diamond = scaffold.diamond();
    let tdim = takeuchi.basis.dim();

    // evaluation of a Takeuchi class on B ⊗ B
    let eval_class = |class: &SparseVec| -> Vec<Vec<SparseVec>> {
        let amb = diamond.space.lift(class);
        let mut table = vec![vec![SparseVec::new(); b.dim]; b.dim];
        for (t, c) in &amb {
            let (p, q) = (t / nd, t % nd);
            for (row, cell) in table.iter_mut().enumerate() {
                for (col, slot) in cell.iter_mut().enumerate() {
                    let val = b.mul_vec(
                        &ops[p].apply(&b.basis_vec(row)),
                        &ops[q].apply(&b.basis_vec(col)),
                    );
                    *slot =
                        normalize([std::mem::take(slot), crate::linalg::scale(&val, c)].concat());
                }
            }
        }
        table
    };
    let basis_tables: Vec<Vec<Vec<SparseVec>>> =
        takeuchi.basis.basis().iter().map(eval_class).collect();
    let mut rows: Vec<SparseVec> = Vec::with_capacity(b.dim * b.dim * b.dim);
    for a in 0..b.dim {
        for bb in 0..b.dim {
            for out in 0..b.dim {
                let mut row = SparseVec::new();
                for (w, table) in basis_tables.iter().enumerate() {
                    if let Some(c) = crate::linalg::get(&table[a][bb], out) {
                        row.push((w, c.clone()));
                    }
                }
                rows.push(row);
            }
        }
    }
    let eq = Matrix::from_rows(tdim, rows);
    let rhs: Vec<SparseVec> = (0..nd)
        .map(|i| {
            let mut r = SparseVec::new();
            for a in 0..b.dim {
                for bb in 0..b.dim {
                    let val = ops[i].apply(b.mul_basis(a, bb));
                    for (out, c) in val {
                        r.push(((a * b.dim + bb) * b.dim + out, c));
                    }
                }
            }
            normalize(r)
        })
        .collect();
    let solutions = solve_many(&eq, &rhs).map_err(|e| match e {
        crate::error::LinalgError::NoSolution => {
            Error::from(DualityError::CoproductNotFactorizable("operator basis".into()))
        }
        crate::error::LinalgError::Singular => {
            Error::from(DualityError::CoproductNotUnique("operator basis".into()))
        }
        other => Error::Internal(other.to_string()),
    })?;
    let coproduct: Vec<SparseVec> = solutions
        .iter()
        .map(|coeffs| {
            let mut class = SparseVec::new();
            for (w, c) in coeffs {
                class = add_scaled(&class, &takeuchi.basis.basis()[*w], c);
            }
            diamond.space.lift(&normalize(class))
        })
        .collect();

    let algebroid = Bialgebroid::build(BialgebroidParts {
        total,
        base: b.clone(),
        source,
        target,
        coproduct,
        counit,
    })?;
    Ok(DiffAlgebroid {
        algebroid,
        ops,
        filtration_dims: levels.iter().map(|s| s.dim()).collect(),
        stabilized_at: stab,
    })
}

/// A dual pairing between two left bialgebroids over the same base:
/// `form[p][x] = ⟨P_p | X_x⟩ ∈ B` with the operator-type algebroid in the
/// first slot.
#[derive(Debug, Clone)]
pub struct DualPairing {
    pub form: Vec<Vec<SparseVec>>,
}

impl DualPairing {
    pub fn eval(&self, p: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ci) in p {
            for (j, cj) in x {
                out = add_scaled(&out, &self.form[*i][*j], &ci.mul(cj));
            }
        }
        out
    }
}

/// The canonical pairing `⟨D | [a ⊗ b]⟩ = D(a) b` between the operator
/// algebroid and a jet algebroid of the same base.
pub fn canonical_pairing(da: &DiffAlgebroid, jet: &Bialgebroid, b: &FiniteAlgebra) -> DualPairing {
    let jd = jet.dim();
    let d = b.dim;
    let section = jet_section_table(jet);
    let form = da
        .ops
        .iter()
        .map(|op| {
            (0..jd)
                .map(|q| {
                    let rep = &section[q];
                    let mut acc = SparseVec::new();
                    for (t, c) in rep {
                        let (a, bb) = (t / d, t % d);
                        acc = add_scaled(
                            &acc,
                            &b.mul_vec(&op.apply(&b.basis_vec(a)), &b.basis_vec(bb)),
                            c,
                        );
                    }
                    acc
                })
                .collect()
        })
        .collect();
    DualPairing { form }
}

/// Representatives of jet-algebroid basis classes inside `B ⊗ B`: basis
/// class `q` of the quotient is the class of its canonical-section
/// coordinate, recovered through `s(e_a) t(e_b)`.
pub fn jet_section_table(jet: &Bialgebroid) -> Vec<SparseVec> {
    let d = jet.base_dim();
    let n = jet.dim();
    let mut table = vec![SparseVec::new(); n];
    let mut assigned = vec![false; n];
    for a in 0..d {
        for b in 0..d {
            let class = jet.total.mul_vec(&jet.source.cols[a], &jet.target.cols[b]);
            if class.len() == 1 && class[0].1.is_one() {
                let q = class[0].0;
                if !assigned[q] {
                    table[q] = vec![(a * d + b, jet.total.field.one())];
                    assigned[q] = true;
                }
            }
        }
    }
    assert!(assigned.iter().all(|&x| x), "jet section not recovered");
    table
}

/// Verify the five dual-pairing axioms exhaustively over basis tuples.
/// The module-compatibility axiom is checked through its five elementary
/// one-parameter forms, which span the full multilinear statement.
pub fn verify_pairing(lam: &Bialgebroid, ell: &Bialgebroid, p: &DualPairing) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let np = lam.dim();
    let nx = ell.dim();
    let m = lam.base_dim();
    let base = &lam.base;

    // (1a) ⟨s(a)P|X⟩ = a⟨P|X⟩    (1b) ⟨t(b)P|X⟩ = ⟨P|X t(b)⟩
    // (1c) ⟨P s(c)|X⟩ = ⟨P|s(c)X⟩ (1d) ⟨P t(d)|X⟩ = ⟨P|X s(d)⟩
    // (1e) ⟨P|X⟩ f = ⟨P|t(f)X⟩
    let w = par::find_witness(5 * m * np * nx, |t| {
        let which = t / (m * np * nx);
        let rest = t % (m * np * nx);
        let (a, rest) = (rest / (np * nx), rest % (np * nx));
        let (pi, xi) = (rest / nx, rest % nx);
        let pv = lam.total.basis_vec(pi);
        let xv = ell.total.basis_vec(xi);
        let (lhs, rhs) = match which {
            0 => (
                p.eval(&lam.total.mul_vec(&lam.source.cols[a], &pv), &xv),
                base.mul_vec(&base.basis_vec(a), &p.form[pi][xi]),
            ),
            1 => (
                p.eval(&lam.total.mul_vec(&lam.target.cols[a], &pv), &xv),
                p.eval(&pv, &ell.total.mul_vec(&xv, &ell.target.cols[a])),
            ),
            2 => (
                p.eval(&lam.total.mul_vec(&pv, &lam.source.cols[a]), &xv),
                p.eval(&pv, &ell.total.mul_vec(&ell.source.cols[a], &xv)),
            ),
            3 => (
                p.eval(&lam.total.mul_vec(&pv, &lam.target.cols[a]), &xv),
                p.eval(&pv, &ell.total.mul_vec(&xv, &ell.source.cols[a])),
            ),
            _ => (
                base.mul_vec(&p.form[pi][xi], &base.basis_vec(a)),
                p.eval(&pv, &ell.total.mul_vec(&ell.target.cols[a], &xv)),
            ),
        };
        (lhs != rhs).then(|| {
            format!(
                "form 1{}, a = {a}, P = {pi}, X = {xi}",
                ['a', 'b', 'c', 'd', 'e'][which]
            )
        })
    });
    rep.push(Check::from_witness("pairing_module_compat", w));

    // (2) ⟨P | X Y⟩ = ⟨P₁ | X t(⟨P₂|Y⟩)⟩ = ⟨t(⟨P₂|Y⟩) P₁ | X⟩
    let w = par::find_witness(np * nx * nx, |t| {
        let (pi, rest) = (t / (nx * nx), t % (nx * nx));
        let (x, y) = (rest / nx, rest % nx);
        let lhs = p.eval(&lam.total.basis_vec(pi), ell.total.mul_basis(x, y));
        let mut mid = SparseVec::new();
        let mut right = SparseVec::new();
        for (u, cu) in &lam.coproduct[pi] {
            let (p1, p2) = (u / np, u % np);
            let inner = ell.t_of(&p.form[p2][y]);
            mid = add_scaled(
                &mid,
                &p.eval(
                    &lam.total.basis_vec(p1),
                    &ell.total.mul_vec(&ell.total.basis_vec(x), &inner),
                ),
                cu,
            );
            let coef = lam.t_of(&p.form[p2][y]);
            right = add_scaled(
                &right,
                &p.eval(
                    &lam.total.mul_vec(&coef, &lam.total.basis_vec(p1)),
                    &ell.total.basis_vec(x),
                ),
                cu,
            );
        }
        (lhs != mid || lhs != right).then(|| format!("P = {pi}, pair ({x},{y})"))
    });
    rep.push(Check::from_witness("pairing_multiplicative_right", w));

    // (3) ⟨P Q | X⟩ = ⟨P s(⟨Q|X₁⟩) | X₂⟩ = ⟨P | s(⟨Q|X₁⟩) X₂⟩
    let w = par::find_witness(np * np * nx, |t| {
        let (pi, rest) = (t / (np * nx), t % (np * nx));
        let (qi, x) = (rest / nx, rest % nx);
        let lhs = p.eval(lam.total.mul_basis(pi, qi), &ell.total.basis_vec(x));
        let mut mid = SparseVec::new();
        let mut right = SparseVec::new();
        for (u, cu) in &ell.coproduct[x] {
            let (x1, x2) = (u / nx, u % nx);
            let inner = p.form[qi][x1].clone();
            let s_in_lam = lam.s_of(&inner);
            mid = add_scaled(
                &mid,
                &p.eval(
                    &lam.total.mul_vec(&lam.total.basis_vec(pi), &s_in_lam),
                    &ell.total.basis_vec(x2),
                ),
                cu,
            );
            let s_in_ell = ell.s_of(&inner);
            right = add_scaled(
                &right,
                &p.eval(
                    &lam.total.basis_vec(pi),
                    &ell.total.mul_vec(&s_in_ell, &ell.total.basis_vec(x2)),
                ),
                cu,
            );
        }
        (lhs != mid || lhs != right).then(|| format!("pair ({pi},{qi}), X = {x}"))
    });
    rep.push(Check::from_witness("pairing_multiplicative_left", w));

    // (4) ⟨P|1⟩ = ε(P)    (5) ⟨1|X⟩ = ε(X)
    let w = par::find_witness(np, |pi| {
        let lhs = p.eval(&lam.total.basis_vec(pi), &ell.total.unit);
        let rhs = lam.eps_of(&lam.total.basis_vec(pi));
        (lhs != rhs).then(|| format!("P = {pi}"))
    });
    rep.push(Check::from_witness("pairing_counit_right", w));
    let w = par::find_witness(nx, |x| {
        let lhs = p.eval(&lam.total.unit, &ell.total.basis_vec(x));
        let rhs = ell.eps_of(&ell.total.basis_vec(x));
        (lhs != rhs).then(|| format!("X = {x}"))
    });
    rep.push(Check::from_witness("pairing_counit_left", w));

    rep
}

/// A certified cocycle element `F = F^α ⋄ F_α` inside a bialgebroid.
#[derive(Debug, Clone)]
pub struct XuCocycle {
    /// Ambient representative in `Λ ⊗ Λ`.
    pub rep: SparseVec,
}

/// A left module of the bialgebroid's total algebra, with the action given
/// per total-basis element.
#[derive(Debug, Clone)]
pub struct LambdaModule {
    pub name: String,
    pub dim: usize,
    pub action: Vec<LinMap>,
}

impl LambdaModule {
    pub fn act(&self, lam_vec: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in lam_vec {
            out = add_scaled(&out, &self.action[*i].apply(v), c);
        }
        out
    }
}

/// The base as a left module: `α ▷ a = ε(α s(a))`.
pub fn base_module(lam: &Bialgebroid) -> LambdaModule {
    let d = lam.base_dim();
    LambdaModule {
        name: "base".into(),
        dim: d,
        action: (0..lam.dim())
            .map(|i| {
                LinMap::new(
                    d,
                    d,
                    (0..d)
                        .map(|a| {
                            lam.eps_of(
                                &lam.total
                                    .mul_vec(&lam.total.basis_vec(i), &lam.source.cols[a]),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    }
}

/// The left regular module.
pub fn regular_module(lam: &Bialgebroid) -> LambdaModule {
    LambdaModule {
        name: "regular".into(),
        dim: lam.dim(),
        action: (0..lam.dim())
            .map(|i| lam.total.left_mul_map(&lam.total.basis_vec(i)))
            .collect(),
    }
}

/// `s^F(b) = ε(F^α b) F_α` as a vector of `Λ`.
pub fn twisted_source_of(lam: &Bialgebroid, f: &XuCocycle, b: &SparseVec) -> SparseVec {
    let n = lam.dim();
    let mut out = SparseVec::new();
    for (t, c) in &f.rep {
        let (u, v) = (t / n, t % n);
        let eps = lam.eps_of(&lam.total.mul_vec(&lam.total.basis_vec(u), &lam.s_of(b)));
        let coeff = lam.s_of(&eps);
        out = add_scaled(&out, &lam.total.mul_vec(&coeff, &lam.total.basis_vec(v)), c);
    }
    normalize(out)
}

/// `t^F(b) = ε(F_α b)‾ F^α`.
pub fn twisted_target_of(lam: &Bialgebroid, f: &XuCocycle, b: &SparseVec) -> SparseVec {
    let n = lam.dim();
    let mut out = SparseVec::new();
    for (t, c) in &f.rep {
        let (u, v) = (t / n, t % n);
        let eps = lam.eps_of(&lam.total.mul_vec(&lam.total.basis_vec(v), &lam.s_of(b)));
        let coeff = lam.t_of(&eps);
        out = add_scaled(&out, &lam.total.mul_vec(&coeff, &lam.total.basis_vec(u)), c);
    }
    normalize(out)
}

/// The comparison map `F# : M ⋄_{B^F} N → M ⋄_B N` of two left modules:
/// `m ⊗ n ↦ F^α ▷ m ⊗ F_α ▷ n`.
pub struct FSharp {
    pub twisted: QuotientSpace,
    pub plain: QuotientSpace,
    pub map: LinMap,
    pub inverse: Option<LinMap>,
}

pub fn f_sharp(lam: &Bialgebroid, f: &XuCocycle, m: &LambdaModule, n: &LambdaModule) -> FSharp {
    let field = lam.total.field;
    let bd = lam.base_dim();
    let rows_for = |tb: &dyn Fn(usize) -> SparseVec, sb: &dyn Fn(usize) -> SparseVec| {
        let mut rows = Vec::new();
        for b in 0..bd {
            let tmaps: Vec<SparseVec> = (0..m.dim)
                .map(|i| m.act(&tb(b), &vec![(i, field.one())]))
                .collect();
            let smaps: Vec<SparseVec> = (0..n.dim)
                .map(|j| n.act(&sb(b), &vec![(j, field.one())]))
                .collect();
            for (i, ti) in tmaps.iter().enumerate() {
                for (j, sj) in smaps.iter().enumerate() {
                    rows.push(normalize(sub(
                        &tensor(ti, &vec![(j, field.one())], n.dim),
                        &tensor(&vec![(i, field.one())], sj, n.dim),
                    )));
                }
            }
        }
        rows
    };
    let plain = QuotientSpace::new(
        m.dim * n.dim,
        rows_for(
            &|b| lam.target.cols[b].clone(),
            &|b| lam.source.cols[b].clone(),
        ),
    );
    let twisted = QuotientSpace::new(
        m.dim * n.dim,
        rows_for(
            &|b| twisted_target_of(lam, f, &lam.base.basis_vec(b)),
            &|b| twisted_source_of(lam, f, &lam.base.basis_vec(b)),
        ),
    );
    let nlam = lam.dim();
    let map = LinMap::new(
        twisted.dim(),
        plain.dim(),
        (0..twisted.dim())
            .map(|q| {
                let rep = twisted.lift(&vec![(q, field.one())]);
                let mut out = SparseVec::new();
                for (t, c) in &rep {
                    let (mi, ni) = (t / n.dim, t % n.dim);
                    for (ft, cf) in &f.rep {
                        let (u, v) = (ft / nlam, ft % nlam);
                        let am = m.action[u].apply(&vec![(mi, field.one())]);
                        let an = n.action[v].apply(&vec![(ni, field.one())]);
                        out = add_scaled(&out, &tensor(&am, &an, n.dim), &c.mul(cf));
                    }
                }
                plain.project(&out)
            })
            .collect(),
    );
    let inverse = (twisted.dim() == plain.dim())
        .then(|| invert_map(&map).ok())
        .flatten();
    FSharp {
        twisted,
        plain,
        map,
        inverse,
    }
}

/// Certify a cocycle element in a bialgebroid: counit normalization, the
/// cocycle identity in the staged triple quotient, and invertibility of
/// `F#` on the default module family `{B, Λ}`.
pub fn check_xu_cocycle(lam: &Bialgebroid, rep: SparseVec) -> Result<XuCocycle, Error> {
    let n = lam.dim();
    let f = XuCocycle {
        rep: normalize(rep),
    };

    // (ε ⋄ id) F = 1 and (id ⋄ ε) F = 1
    let mut left = SparseVec::new();
    let mut right = SparseVec::new();
    for (t, c) in &f.rep {
        let (u, v) = (t / n, t % n);
        let se = lam.s_of(&lam.eps_of(&lam.total.basis_vec(u)));
        left = add_scaled(&left, &lam.total.mul_vec(&se, &lam.total.basis_vec(v)), c);
        let te = lam.t_of(&lam.eps_of(&lam.total.basis_vec(v)));
        right = add_scaled(&right, &lam.total.mul_vec(&te, &lam.total.basis_vec(u)), c);
    }
    if normalize(left) != lam.total.unit {
        return Err(DualityError::ConformanceFailure {
            form: "xu_counit_left".into(),
            witness: "(ε ⋄ id)F differs from the unit".into(),
        }
        .into());
    }
    if normalize(right) != lam.total.unit {
        return Err(DualityError::ConformanceFailure {
            form: "xu_counit_right".into(),
            witness: "(id ⋄ ε)F differs from the unit".into(),
        }
        .into());
    }

    // (Δ ⋄ id)F · F¹² = (id ⋄ Δ)F · F²³ in Λ ⋄ Λ ⋄ Λ
    let mut lhs = SparseVec::new();
    for (t, c) in &f.rep {
        let (u, v) = (t / n, t % n);
        for (a, ca) in &lam.coproduct[u] {
            lhs.push((a * n + v, c.mul(ca)));
        }
    }
    let mut rhs = SparseVec::new();
    for (t, c) in &f.rep {
        let (u, v) = (t / n, t % n);
        for (a, ca) in &lam.coproduct[v] {
            rhs.push((u * n * n + a, c.mul(ca)));
        }
    }
    let f12: SparseVec = f
        .rep
        .iter()
        .flat_map(|(t, c)| {
            lam.total
                .unit
                .iter()
                .map(move |(w, cw)| (t * n + w, c.mul(cw)))
        })
        .collect();
    let f23: SparseVec = f
        .rep
        .iter()
        .flat_map(|(t, c)| {
            lam.total
                .unit
                .iter()
                .map(move |(w, cw)| (w * n * n + t, c.mul(cw)))
        })
        .collect();
    let lhs = triple_product(lam, &normalize(lhs), &normalize(f12));
    let rhs = triple_product(lam, &normalize(rhs), &normalize(f23));
    if !lam.triple_diamond().classes_equal(&lhs, &rhs) {
        return Err(DualityError::ConformanceFailure {
            form: "xu_cocycle_condition".into(),
            witness: "the two coproduct routes differ".into(),
        }
        .into());
    }

    for m in [base_module(lam), regular_module(lam)] {
        for nn in [base_module(lam), regular_module(lam)] {
            let fs = f_sharp(lam, &f, &m, &nn);
            if fs.inverse.is_none() {
                return Err(DualityError::ConformanceFailure {
                    form: "xu_invertible".into(),
                    witness: format!("F# singular on ({}, {})", m.name, nn.name),
                }
                .into());
            }
        }
    }
    Ok(f)
}

fn triple_product(lam: &Bialgebroid, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let n = lam.dim();
    let mut out = SparseVec::new();
    for (t, ct) in a {
        let (i, rest) = (t / (n * n), t % (n * n));
        let (j, k) = (rest / n, rest % n);
        for (u, cu) in b {
            let (p, rest2) = (u / (n * n), u % (n * n));
            let (q, r) = (rest2 / n, rest2 % n);
            let fst = lam.total.mul_basis(i, p);
            let snd = lam.total.mul_basis(j, q);
            let trd = lam.total.mul_basis(k, r);
            for (x, cx) in fst {
                for (y, cy) in snd {
                    for (z, cz) in trd {
                        out.push((x * n * n + y * n + z, ct.mul(cu).mul(cx).mul(cy).mul(cz)));
                    }
                }
            }
        }
    }
    normalize(out)
}

/// Twist a bialgebroid by a certified cocycle element: deformed base,
/// deformed source/target, coproduct conjugated by `F#`, product and counit
/// unchanged. The result is fully re-verified.
pub fn twist_bialgebroid_by_f(lam: &Bialgebroid, f: &XuCocycle) -> Result<Bialgebroid, Error> {
    let bd = lam.base_dim();
    let n = lam.dim();
    let base_table: Vec<Vec<SparseVec>> = (0..bd)
        .map(|a| {
            (0..bd)
                .map(|b| {
                    let mut out = SparseVec::new();
                    for (t, c) in &f.rep {
                        let (u, v) = (t / n, t % n);
                        let ea = lam.eps_of(
                            &lam.total
                                .mul_vec(&lam.total.basis_vec(u), &lam.source.cols[a]),
                        );
                        let eb = lam.eps_of(
                            &lam.total
                                .mul_vec(&lam.total.basis_vec(v), &lam.source.cols[b]),
                        );
                        out = add_scaled(&out, &lam.base.mul_vec(&ea, &eb), c);
                    }
                    out
                })
                .collect()
        })
        .collect();
    let base = FiniteAlgebra::new(
        format!("{}^F", lam.base.name),
        lam.base.field,
        lam.base.basis_names.clone(),
        lam.base.unit.clone(),
        base_table,
    )
    .map_err(|e| Error::Internal(format!("F-twisted base failed validation: {e}")))?;

    let source = LinMap::new(
        bd,
        n,
        (0..bd)
            .map(|a| twisted_source_of(lam, f, &lam.base.basis_vec(a)))
            .collect(),
    );
    let target = LinMap::new(
        bd,
        n,
        (0..bd)
            .map(|a| twisted_target_of(lam, f, &lam.base.basis_vec(a)))
            .collect(),
    );

    // Δ^F = F#^{-1} (α₁ F^α ⋄ α₂ F_α) on the regular modules
    let reg = regular_module(lam);
    let fs = f_sharp(lam, f, &reg, &reg);
    let inv = fs.inverse.clone().ok_or_else(|| {
        Error::from(DualityError::ConformanceFailure {
            form: "xu_invertible".into(),
            witness: "F# singular on the regular modules".into(),
        })
    })?;
    let coproduct = (0..n)
        .map(|x| {
            let mut amb = SparseVec::new();
            for (t, c) in &lam.coproduct[x] {
                let (x1, x2) = (t / n, t % n);
                for (u, cu) in &f.rep {
                    let (fa, fb) = (u / n, u % n);
                    let first = lam.total.mul_basis(x1, fa);
                    let second = lam.total.mul_basis(x2, fb);
                    amb = add_scaled(&amb, &tensor(first, second, n), &c.mul(cu));
                }
            }
            let class = fs.plain.project(&normalize(amb));
            fs.twisted.lift(&inv.apply(&class))
        })
        .collect();

    Bialgebroid::build(BialgebroidParts {
        total: lam.total.clone(),
        base,
        source,
        target,
        coproduct,
        counit: lam.counit.clone(),
    })
    .map_err(Into::into)
}

/// Dualize a cocycle element through a dual pairing:
/// `Γ_F(X, Y) = ⟨F^α | X t(⟨F_α | Y⟩)⟩`, certified on the paired algebroid
/// with invertibility re-verified.
pub fn dualize_cocycle(
    lam: &Bialgebroid,
    f: &XuCocycle,
    pairing: &DualPairing,
    ell: &Bialgebroid,
) -> Result<Cocycle, Error> {
    let nl = ell.dim();
    let nlam = lam.dim();
    let gamma: Vec<Vec<SparseVec>> = par::map_indexed(nl, |x| {
        (0..nl)
            .map(|y| {
                let mut out = SparseVec::new();
                for (t, c) in &f.rep {
                    let (u, v) = (t / nlam, t % nlam);
                    let inner = &pairing.form[v][y];
                    let arg = ell.total.mul_vec(&ell.total.basis_vec(x), &ell.t_of(inner));
                    out = add_scaled(&out, &pairing.eval(&lam.total.basis_vec(u), &arg), c);
                }
                out
            })
            .collect()
    });
    let c = check_cocycle(ell, gamma).map_err(Error::from)?;
    check_invertible(ell, &c, &default_family(ell)?).map_err(Error::from)?;
    Ok(c)
}

/// The action identity of a dualized cocycle: `Γ_F#(m ⊗ n)` agrees with
/// `F^α ▷ m ⊗ F_α ▷ n`, where `▷` is the pairing-induced action
/// `α ▷ m = ⟨α | m₋₁⟩ . m₀` on a comodule of the paired algebroid.
pub fn dual_action_identity_check(
    lam: &Bialgebroid,
    f: &XuCocycle,
    pairing: &DualPairing,
    ell: &Bialgebroid,
    gamma: &Cocycle,
    m: &crate::comodule::Comodule,
    n: &crate::comodule::Comodule,
) -> Result<Option<String>, Error> {
    let gs = crate::cotwist::gamma_sharp(ell, gamma, m, n).map_err(Error::from)?;
    let field = ell.total.field;
    let nlam = lam.dim();
    let act = |lam_idx: usize, com: &crate::comodule::Comodule, v: usize| -> SparseVec {
        let mut out = SparseVec::new();
        for (t, c) in &com.coaction[v] {
            let (li, m0) = (t / com.dim, t % com.dim);
            let coeff = &pairing.form[lam_idx][li];
            out = normalize(
                [
                    out,
                    crate::linalg::scale(
                        &com.left_act.apply_vec(coeff, &vec![(m0, field.one())]),
                        c,
                    ),
                ]
                .concat(),
            );
        }
        out
    };
    for q in 0..gs.twisted.dim() {
        let rep = gs.twisted.lift(&vec![(q, field.one())]);
        let mut direct = SparseVec::new();
        for (t, ct) in &rep {
            let (mi, ni) = (t / n.dim, t % n.dim);
            for (ft, cf) in &f.rep {
                let (u, v) = (ft / nlam, ft % nlam);
                let am = act(u, m, mi);
                let an = act(v, n, ni);
                direct = add_scaled(&direct, &tensor(&am, &an, n.dim), &ct.mul(cf));
            }
        }
        let lhs = gs.map.apply(&gs.twisted.project(&rep));
        let rhs = gs.plain.project(&direct);
        if lhs != rhs {
            return Ok(Some(format!(
                "action identity fails at class {q} of ({}, {})",
                m.name, n.name
            )));
        }
    }
    Ok(None)
}

/// The twisted dual pairing `[α | X] = ⟨F^α α | X₊ t(⟨F_α | X₋⟩)⟩`.
pub fn twisted_pairing(
    lam: &Bialgebroid,
    f: &XuCocycle,
    pairing: &DualPairing,
    ell: &Bialgebroid,
) -> Result<DualPairing, Error> {
    let tm = ell.translation()?;
    let nl = ell.dim();
    let nlam = lam.dim();
    let form: Vec<Vec<SparseVec>> = par::map_indexed(nlam, |alpha| {
        (0..nl)
            .map(|x| {
                let mut out = SparseVec::new();
                for (t, c) in &f.rep {
                    let (u, v) = (t / nlam, t % nlam);
                    let outer = lam
                        .total
                        .mul_vec(&lam.total.basis_vec(u), &lam.total.basis_vec(alpha));
                    for (w, cw) in &tm.plus_minus[x] {
                        let (xp, xm) = (w / nl, w % nl);
                        let inner = &pairing.form[v][xm];
                        let arg = ell
                            .total
                            .mul_vec(&ell.total.basis_vec(xp), &ell.t_of(inner));
                        out = add_scaled(&out, &pairing.eval(&outer, &arg), &c.mul(cw));
                    }
                }
                out
            })
            .collect()
    });
    Ok(DualPairing { form })
}

/// Everything the quantized-jet construction produces, with the conformance
/// report for the closed forms.
pub struct QuantizedJet {
    pub jet: Bialgebroid,
    pub diff: DiffAlgebroid,
    pub xu: XuCocycle,
    pub pairing: DualPairing,
    pub gamma: Cocycle,
    pub gamma_inverse: Cocycle,
    pub twisted: Bialgebroid,
    pub conformance: VerificationReport,
}

/// The exponential cocycle element `F = Σ θⁿ/n! D₁ⁿ ⋄ D₂ⁿ` of two
/// commuting nilpotent derivations, expanded in the operator basis. The
/// series must truncate before the characteristic interferes.
pub fn exponential_cocycle(
    da: &DiffAlgebroid,
    d1: &LinMap,
    d2: &LinMap,
    theta: &Scalar,
    b: &FiniteAlgebra,
) -> Result<SparseVec, Error> {
    for (name, d) in [("first", d1), ("second", d2)] {
        for i in 0..b.dim {
            for j in 0..b.dim {
                let lhs = d.apply(b.mul_basis(i, j));
                let rhs = normalize(
                    [
                        b.mul_vec(&d.apply(&b.basis_vec(i)), &b.basis_vec(j)),
                        b.mul_vec(&b.basis_vec(i), &d.apply(&b.basis_vec(j))),
                    ]
                    .concat(),
                );
                if lhs != rhs {
                    return Err(DualityError::BadRecipe(format!(
                        "{name} generator is not a derivation"
                    ))
                    .into());
                }
            }
        }
    }
    if d1.compose(d2) != d2.compose(d1) {
        return Err(DualityError::BadRecipe("generators do not commute".into()).into());
    }
    if flatten_op(d1).is_empty() || flatten_op(d2).is_empty() {
        return Err(DualityError::BadRecipe("zero derivation".into()).into());
    }

    let nd = da.ops.len();
    let mut rep: SparseVec = Vec::new();
    let mut p1 = LinMap::identity(b.dim, b.field);
    let mut p2 = LinMap::identity(b.dim, b.field);
    let mut n = 0u64;
    let mut theta_pow = b.field.one();
    loop {
        if n > 0 {
            p1 = p1.compose(d1);
            p2 = p2.compose(d2);
            if flatten_op(&p1).is_empty() || flatten_op(&p2).is_empty() {
                break;
            }
            theta_pow = theta_pow.mul(theta);
        }
        let inv_fact = Scalar::inv_factorial(b.field, n).ok_or_else(|| {
            Error::from(DualityError::BadRecipe(format!(
                "1/{n}! does not exist in the ground field before the series truncates"
            )))
        })?;
        let c1 = da.coordinates(&p1).ok_or_else(|| {
            Error::from(DualityError::BadRecipe(
                "derivation power escapes the operator algebra".into(),
            ))
        })?;
        let c2 = da.coordinates(&p2).ok_or_else(|| {
            Error::from(DualityError::BadRecipe(
                "derivation power escapes the operator algebra".into(),
            ))
        })?;
        let coeff = theta_pow.mul(&inv_fact);
        rep = normalize([rep, crate::linalg::scale(&tensor(&c1, &c2, nd), &coeff)].concat());
        n += 1;
        if n > (b.dim as u64) * 2 + 2 {
            return Err(DualityError::BadRecipe("series does not truncate".into()).into());
        }
    }
    Ok(rep)
}

/// The star product induced by a cocycle element:
/// `a ∗ b = ε(F^α a) ε(F_α b)`.
pub fn star_table_from_f(
    lam: &Bialgebroid,
    f: &XuCocycle,
    b: &FiniteAlgebra,
) -> Vec<Vec<SparseVec>> {
    let n = lam.dim();
    (0..b.dim)
        .map(|i| {
            (0..b.dim)
                .map(|j| {
                    let mut out = SparseVec::new();
                    for (t, c) in &f.rep {
                        let (u, v) = (t / n, t % n);
                        let ea = lam.eps_of(
                            &lam.total
                                .mul_vec(&lam.total.basis_vec(u), &lam.source.cols[i]),
                        );
                        let eb = lam.eps_of(
                            &lam.total
                                .mul_vec(&lam.total.basis_vec(v), &lam.source.cols[j]),
                        );
                        out = add_scaled(&out, &b.mul_vec(&ea, &eb), c);
                    }
                    out
                })
                .collect()
        })
        .collect()
}

/// Run the full quantization pipeline on a commutative base with a
/// derivation pair, and check every closed form of the twisted structure.
pub fn quantized_jet(
    b: &FiniteAlgebra,
    d1: &LinMap,
    d2: &LinMap,
    theta: &Scalar,
    cap: usize,
) -> Result<QuantizedJet, Error> {
    let jet = jet_hopf_algebroid(b, cap)?;
    let diff = diff_bialgebroid(b, cap)?;
    let rep = exponential_cocycle(&diff, d1, d2, theta, b)?;
    let xu = check_xu_cocycle(&diff.algebroid, rep)?;
    let pairing = canonical_pairing(&diff, &jet, b);
    let gamma = dualize_cocycle(&diff.algebroid, &xu, &pairing, &jet)?;
    let twisted = cotwist(&jet, &gamma)?;
    let gamma_inverse = inverse_cocycle(&jet, &gamma, &twisted)?;

    let mut conformance = VerificationReport::default();
    let star = star_table_from_f(&diff.algebroid, &xu, b);
    let d = b.dim;
    let n = jet.dim();
    let section: Vec<Vec<SparseVec>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|bb| {
                    jet.total
                        .mul_vec(&jet.source.cols[a], &jet.target.cols[bb])
                })
                .collect()
        })
        .collect();
    let class_of = |avec: &SparseVec, bvec: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in avec {
            for (bb, cb) in bvec {
                out = add_scaled(&out, &section[*a][*bb], &ca.mul(cb));
            }
        }
        normalize(out)
    };

    let w = (0..d).find_map(|a| {
        (jet.source.cols[a] != twisted.source.cols[a]).then(|| format!("s at basis {a}"))
    });
    conformance.push(Check::from_witness("closed_form_source", w));
    let w = (0..d).find_map(|a| {
        (jet.target.cols[a] != twisted.target.cols[a]).then(|| format!("t at basis {a}"))
    });
    conformance.push(Check::from_witness("closed_form_target", w));

    // [a⊗b] ·_Γ [c⊗d] = [a∗c ⊗ d∗b]
    let w = par::find_witness(d * d * d * d, |t| {
        let (a, rest) = (t / (d * d * d), t % (d * d * d));
        let (bb, rest) = (rest / (d * d), rest % (d * d));
        let (c, dd) = (rest / d, rest % d);
        let x = class_of(&b.basis_vec(a), &b.basis_vec(bb));
        let y = class_of(&b.basis_vec(c), &b.basis_vec(dd));
        let lhs = twisted.total.mul_vec(&x, &y);
        let rhs = class_of(&star[a][c], &star[dd][bb]);
        (lhs != rhs).then(|| format!("([{a}⊗{bb}], [{c}⊗{dd}])"))
    });
    conformance.push(Check::from_witness("closed_form_product", w));

    // Δ^Γ([a⊗b]) = [a⊗1] ⋄ [1⊗b]
    let w = par::find_witness(d * d, |t| {
        let (a, bb) = (t / d, t % d);
        let x = class_of(&b.basis_vec(a), &b.basis_vec(bb));
        let lhs = twisted.coproduct_vec(&x);
        let rhs = tensor(
            &class_of(&b.basis_vec(a), &b.unit),
            &class_of(&b.unit, &b.basis_vec(bb)),
            n,
        );
        (!twisted.diamond().space.classes_equal(&lhs, &rhs)).then(|| format!("Δ^Γ at [{a}⊗{bb}]"))
    });
    conformance.push(Check::from_witness("closed_form_coproduct", w));

    // ε^Γ([a⊗b]) = a ∗ b
    let w = par::find_witness(d * d, |t| {
        let (a, bb) = (t / d, t % d);
        let x = class_of(&b.basis_vec(a), &b.basis_vec(bb));
        let lhs = twisted.eps_of(&x);
        (lhs != star[a][bb]).then(|| format!("ε^Γ at [{a}⊗{bb}]"))
    });
    conformance.push(Check::from_witness("closed_form_counit", w));

    // [a⊗b]₊ ⊗ [a⊗b]₋ = [a⊗1] ⊗ [b⊗1] for the twisted translation
    let w = match twisted.translation() {
        Ok(tw_tm) => par::find_witness(d * d, |t| {
            let (a, bb) = (t / d, t % d);
            let x = class_of(&b.basis_vec(a), &b.basis_vec(bb));
            let lhs = tw_tm.apply(&x);
            let rhs = tensor(
                &class_of(&b.basis_vec(a), &b.unit),
                &class_of(&b.basis_vec(bb), &b.unit),
                n,
            );
            (!twisted.tensor_opp().space.classes_equal(&lhs, &rhs))
                .then(|| format!("translation at [{a}⊗{bb}]"))
        }),
        Err(e) => Some(e.to_string()),
    };
    conformance.push(Check::from_witness("closed_form_translation", w));

    // Γ⁻¹([a⊗b], [c⊗d]) = (a c) ∗ (d ∗ b)
    let star_vec = |u: &SparseVec, v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ci) in u {
            for (j, cj) in v {
                out = add_scaled(&out, &star[*i][*j], &ci.mul(cj));
            }
        }
        out
    };
    let w = par::find_witness(d * d * d * d, |t| {
        let (a, rest) = (t / (d * d * d), t % (d * d * d));
        let (bb, rest) = (rest / (d * d), rest % (d * d));
        let (c, dd) = (rest / d, rest % d);
        let x = class_of(&b.basis_vec(a), &b.basis_vec(bb));
        let y = class_of(&b.basis_vec(c), &b.basis_vec(dd));
        let lhs = gamma_inverse.eval(&x, &y);
        let rhs = star_vec(b.mul_basis(a, c), &star[dd][bb]);
        (lhs != normalize(rhs)).then(|| format!("Γ⁻¹ at ([{a}⊗{bb}], [{c}⊗{dd}])"))
    });
    conformance.push(Check::from_witness("closed_form_inverse_cocycle", w));

    Ok(QuantizedJet {
        jet,
        diff,
        xu,
        pairing,
        gamma,
        gamma_inverse,
        twisted,
        conformance,
    })
}

/// Convenience wrapper computing the jet chain used by reports.
pub fn chain_for(b: &FiniteAlgebra, cap: usize) -> Result<JetChain, JetError> {
    jet_chain(b, cap)
}
