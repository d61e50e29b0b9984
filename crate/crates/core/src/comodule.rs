//! Left comodules of a left bialgebroid: carrier, base bimodule structure,
//! and an ambient coaction representative in `L ⊗ M`. Verification checks
//! the bimodule axioms, counitality, coassociativity (in the staged
//! `L ⋄ L ⋄ M` quotient) and Takeuchi membership of the coaction.

use crate::bialgebroid::{slot2_map, Bialgebroid};
use crate::linalg::{add_scaled, kernel_basis_in, normalize, LinMap, Matrix, SparseVec, Subspace};
use crate::par;
use crate::report::{Check, VerificationReport};
use crate::tensor::{Action, PairLayout, StagedTriple};

/// A left comodule: a base bimodule together with a coaction into `L ⋄ M`,
/// stored as an ambient representative.
#[derive(Debug, Clone)]
pub struct Comodule {
    pub name: String,
    pub dim: usize,
    /// `b . m`
    pub left_act: Action,
    /// `m . b`
    pub right_act: Action,
    /// Per carrier basis vector: representative in `L ⊗ M`.
    pub coaction: Vec<SparseVec>,
}

impl Comodule {
    pub fn coaction_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            out = add_scaled(&out, &self.coaction[*i], c);
        }
        out
    }
}

/// The base algebra as a left comodule: `δ(b) = s(b) ⊗ 1`.
pub fn base_comodule(l: &Bialgebroid) -> Comodule {
    let b = &l.base;
    let d = b.dim;
    Comodule {
        name: "base".into(),
        dim: d,
        left_act: Action::new((0..d).map(|i| b.left_mul_map(&b.basis_vec(i))).collect()),
        right_act: Action::new((0..d).map(|i| b.right_mul_map(&b.basis_vec(i))).collect()),
        coaction: (0..d)
            .map(|i| crate::linalg::tensor(&l.source.cols[i], &b.unit, d))
            .collect(),
    }
}

/// `L` coacting on itself through the coproduct, with the bimodule
/// structure `a.X.b = s(a) X s(b)`.
pub fn coproduct_comodule(l: &Bialgebroid) -> Comodule {
    let m = l.base_dim();
    Comodule {
        name: "total-coproduct".into(),
        dim: l.dim(),
        left_act: Action::new(
            (0..m)
                .map(|i| l.total.left_mul_map(&l.source.cols[i]))
                .collect(),
        ),
        right_act: Action::new(
            (0..m)
                .map(|i| l.total.right_mul_map(&l.source.cols[i]))
                .collect(),
        ),
        coaction: l.coproduct.clone(),
    }
}

/// The regular comodule `X ↦ X₋ ⊗ X₊` of a left Hopf algebroid, with the
/// bimodule structure `b.X.b' = t(b') X t(b)`.
pub fn regular_comodule(l: &Bialgebroid) -> Result<Comodule, crate::error::AlgebroidError> {
    let tm = l.translation()?;
    let n = l.dim();
    let m = l.base_dim();
    let coaction = (0..n)
        .map(|x| {
            normalize(
                tm.plus_minus[x]
                    .iter()
                    .map(|(t, c)| ((t % n) * n + t / n, c.clone()))
                    .collect(),
            )
        })
        .collect();
    Ok(Comodule {
        name: "total-regular".into(),
        dim: n,
        left_act: Action::new(
            (0..m)
                .map(|i| l.total.right_mul_map(&l.target.cols[i]))
                .collect(),
        ),
        right_act: Action::new(
            (0..m)
                .map(|i| l.total.left_mul_map(&l.target.cols[i]))
                .collect(),
        ),
        coaction,
    })
}

/// Presentation of `L ⋄_B M`: relations `t(b) X ⊗ m − X ⊗ b.m`.
pub fn coaction_target(l: &Bialgebroid, m: &Comodule) -> crate::linalg::QuotientSpace {
    let n = l.dim();
    let md = m.dim;
    let bd = l.base_dim();
    let one = l.total.field.one();
    let rows = (0..bd * n * md).map(|t| {
        let b = t / (n * md);
        let i = (t / md) % n;
        let j = t % md;
        let lmap = &l.bimodule().left_bbar.as_ref().unwrap().maps[b];
        let mmap = &m.left_act.maps[b];
        normalize(crate::linalg::sub(
            &crate::linalg::tensor(&lmap.cols[i], &vec![(j, one.clone())], md),
            &crate::linalg::tensor(&vec![(i, one.clone())], &mmap.cols[j], md),
        ))
    });
    crate::linalg::QuotientSpace::new(n * md, rows)
}

/// Verify the comodule axioms against a bialgebroid.
pub fn verify_comodule(l: &Bialgebroid, m: &Comodule) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let n = l.dim();
    let md = m.dim;
    let bd = l.base_dim();

    let mut w = m
        .left_act
        .verify_left(&l.base)
        .map(|s| format!("left action: {s}"));
    if w.is_none() {
        w = m
            .right_act
            .verify_right(&l.base)
            .map(|s| format!("right action: {s}"));
    }
    if w.is_none() {
        w = (0..bd * bd).find_map(|t| {
            let (a, b) = (t / bd, t % bd);
            (m.left_act.maps[a].compose(&m.right_act.maps[b])
                != m.right_act.maps[b].compose(&m.left_act.maps[a]))
            .then(|| format!("actions do not commute at ({a},{b})"))
        });
    }
    rep.push(Check::from_witness("comodule_bimodule", w));

    let target = coaction_target(l, m);

    // δ(b.m.b') = s(b) m₋₁ s(b') ⊗ m₀: the base moves to plain products
    // along the source map on the L slot
    let w = par::find_witness(2 * bd * md, |t| {
        let side = t / (bd * md);
        let b = (t / md) % bd;
        let v = t % md;
        let (moved, slot_map) = if side == 0 {
            (
                m.left_act.maps[b].apply(&vec![(v, l.total.field.one())]),
                l.total.left_mul_map(&l.source.cols[b]),
            )
        } else {
            (
                m.right_act.maps[b].apply(&vec![(v, l.total.field.one())]),
                l.total.right_mul_map(&l.source.cols[b]),
            )
        };
        let lhs = m.coaction_vec(&moved);
        let rhs = apply_slot1(&m.coaction[v], &slot_map, md);
        (!target.classes_equal(&lhs, &rhs)).then(|| {
            format!(
                "{} action, base {b}, carrier {v}",
                if side == 0 { "left" } else { "right" }
            )
        })
    });
    rep.push(Check::from_witness("coaction_bilinear", w));

    // (ε ⋄ id) δ = id
    let w = par::find_witness(md, |v| {
        let mut acc = SparseVec::new();
        for (t, c) in &m.coaction[v] {
            let (i, j) = (t / md, t % md);
            let eps = l.eps_of(&vec![(i, c.clone())]);
            acc = normalize(
                [acc, m.left_act.apply_vec(&eps, &vec![(j, l.total.field.one())])].concat(),
            );
        }
        (acc != vec![(v, l.total.field.one())]).then(|| format!("carrier {v}"))
    });
    rep.push(Check::from_witness("coaction_counital", w));

    // (Δ ⋄ id) δ = (id ⋄ δ) δ in the staged L ⋄ L ⋄ M quotient
    let left_bbar = l.bimodule().left_bbar.as_ref().unwrap();
    let link_pair: Vec<LinMap> = (0..bd).map(|b| slot2_map(n, &left_bbar.maps[b])).collect();
    let link_loose: Vec<LinMap> = (0..bd).map(|b| m.left_act.maps[b].clone()).collect();
    let triple = StagedTriple::new(
        (n, n, md),
        PairLayout::Left,
        l.diamond().space.clone(),
        link_pair,
        link_loose,
    );
    let w = par::find_witness(md, |v| {
        let mut lhs = SparseVec::new();
        for (t, c) in &m.coaction[v] {
            let (i, j) = (t / md, t % md);
            for (u, d) in &l.coproduct[i] {
                lhs.push((u * md + j, c.mul(d)));
            }
        }
        let mut rhs = SparseVec::new();
        for (t, c) in &m.coaction[v] {
            let (i, j) = (t / md, t % md);
            for (u, d) in &m.coaction[j] {
                rhs.push((i * n * md + u, c.mul(d)));
            }
        }
        (!triple.classes_equal(&normalize(lhs), &normalize(rhs))).then(|| format!("carrier {v}"))
    });
    rep.push(Check::from_witness("coaction_coassociative", w));

    // image in the Takeuchi part of L ⋄ M
    let right_bbar = l.bimodule().right_bbar.as_ref().unwrap();
    let qdim = target.dim();
    let mut rows: Vec<SparseVec> = Vec::with_capacity(bd * qdim);
    for b in 0..bd {
        for q in 0..qdim {
            let rep_q = target.lift(&vec![(q, l.total.field.one())]);
            let mut moved = SparseVec::new();
            for (t, c) in &rep_q {
                let (i, j) = (t / md, t % md);
                let left =
                    crate::linalg::tensor(&right_bbar.maps[b].cols[i], &vec![(j, c.clone())], md);
                let right = crate::linalg::tensor(
                    &vec![(i, c.clone())],
                    &m.right_act.maps[b].cols[j],
                    md,
                );
                moved = normalize([moved, crate::linalg::sub(&left, &right)].concat());
            }
            // row (b,q) of the stacked constraint matrix, transposed below
            rows.push(target.project(&moved));
        }
    }
    // transpose: constraints act on quotient coordinates
    let mut constraint_rows: Vec<SparseVec> = vec![SparseVec::new(); bd * qdim];
    for (idx, img) in rows.iter().enumerate() {
        let q = idx % qdim;
        for (out_c, val) in img {
            constraint_rows[(idx / qdim) * qdim + *out_c].push((q, val.clone()));
        }
    }
    let ker = kernel_basis_in(
        &Matrix::from_rows(qdim, constraint_rows.into_iter().map(normalize).collect()),
        l.total.field,
    );
    let takeuchi_part = Subspace::span(qdim, ker);
    let w = par::find_witness(md, |v| {
        let class = target.project(&m.coaction[v]);
        (!takeuchi_part.contains(&class)).then(|| format!("carrier {v}"))
    });
    rep.push(Check::from_witness("coaction_takeuchi", w));

    rep
}

fn apply_slot1(v: &SparseVec, m: &LinMap, md: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (t, c) in v {
        let (i, j) = (t / md, t % md);
        for (k, d) in &m.cols[i] {
            out.push((k * md + j, c.mul(d)));
        }
    }
    normalize(out)
}
