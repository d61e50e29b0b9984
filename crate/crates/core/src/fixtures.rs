//! Shared desk-scale fixtures: the algebras, derivations and cocycles the
//! test suites and the shipped input files are built from.

use crate::algebra::FiniteAlgebra;
use crate::linalg::{kron, LinMap, SparseVec};
use crate::scalar::{Field, Scalar};

/// Functions on a 3-point set: split idempotents `e_i e_j = δ_ij e_i`,
/// unit `e_1 + e_2 + e_3`.
pub fn algebra_b3() -> FiniteAlgebra {
    let f = Field::Q;
    let dim = 3;
    let mul = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        vec![(i, f.one())]
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new(
        "b3",
        f,
        vec!["e1".into(), "e2".into(), "e3".into()],
        (0..dim).map(|i| (i, f.one())).collect(),
        mul,
    )
    .expect("b3 is a valid algebra")
}

/// Truncated polynomials `k[x]/(x^n)` with basis `1, x, ..., x^(n-1)`.
pub fn truncated_poly(n: usize, field: Field) -> FiniteAlgebra {
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + j < n {
                        vec![(i + j, field.one())]
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    FiniteAlgebra::new(
        format!("k[x]/(x^{n})"),
        field,
        names,
        vec![(0, field.one())],
        mul,
    )
    .expect("truncated polynomial algebra is valid")
}

/// `Q[x]/(x^2)`.
pub fn algebra_b2() -> FiniteAlgebra {
    let mut a = truncated_poly(2, Field::Q);
    a.name = "b2".into();
    a
}

/// Tensor product of two algebras, basis `a_i ⊗ b_j` at `i*dim(b) + j`.
pub fn tensor_product_algebra(name: &str, a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    assert_eq!(a.field, b.field);
    let db = b.dim;
    let names = (0..a.dim * db)
        .map(|t| {
            let (first, second) = (&a.basis_names[t / db], &b.basis_names[t % db]);
            match (first.as_str(), second.as_str()) {
                ("1", "1") => "1".to_string(),
                ("1", _) => second.clone(),
                (_, "1") => first.clone(),
                _ => format!("{first}·{second}"),
            }
        })
        .collect();
    let unit = crate::linalg::tensor(&a.unit, &b.unit, db);
    let mul = (0..a.dim * db)
        .map(|s| {
            let (i, j) = (s / db, s % db);
            (0..a.dim * db)
                .map(|t| {
                    let (k, l) = (t / db, t % db);
                    crate::linalg::normalize(crate::linalg::tensor(
                        a.mul_basis(i, k),
                        b.mul_basis(j, l),
                        db,
                    ))
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new(name, a.field, names, unit, mul).expect("tensor product is valid")
}

/// The Moyal base `Q[x]/(x^3) ⊗ Q[y]/(y^3)`, dimension 9.
pub fn algebra_bm() -> FiniteAlgebra {
    let x = truncated_poly(3, Field::Q);
    let mut y = truncated_poly(3, Field::Q);
    y.basis_names = vec!["1".into(), "y".into(), "y^2".into()];
    tensor_product_algebra("bm", &x, &y)
}

/// Characteristic-p variant `F_p[x]/(x^p) ⊗ F_p[y]/(y^p)`.
pub fn algebra_bm_char_p(p: u64) -> FiniteAlgebra {
    let f = Field::Fp(p);
    let x = truncated_poly(p as usize, f);
    let mut y = truncated_poly(p as usize, f);
    y.basis_names = (0..p as usize)
        .map(|i| match i {
            0 => "1".into(),
            1 => "y".into(),
            _ => format!("y^{i}"),
        })
        .collect();
    tensor_product_algebra(&format!("bm_f{p}"), &x, &y)
}

/// Upper-triangular 2x2 matrices: basis `e11, e12, e22`, noncommutative.
pub fn algebra_ut2() -> FiniteAlgebra {
    let f = Field::Q;
    let one = f.one();
    // e11*e11 = e11, e11*e12 = e12, e12*e22 = e12, e22*e22 = e22, rest 0
    let mul = vec![
        vec![vec![(0, one.clone())], vec![(1, one.clone())], Vec::new()],
        vec![Vec::new(), Vec::new(), vec![(1, one.clone())]],
        vec![Vec::new(), Vec::new(), vec![(2, one.clone())]],
    ];
    FiniteAlgebra::new(
        "ut2",
        f,
        vec!["e11".into(), "e12".into(), "e22".into()],
        vec![(0, one.clone()), (2, one)],
        mul,
    )
    .expect("ut2 is a valid algebra")
}

/// The group algebra `Q[Z2 x Z2]`, basis indexed by group elements
/// `(a,b)` at `2a + b`.
pub fn algebra_k4_group() -> FiniteAlgebra {
    let f = Field::Q;
    let dim = 4;
    let mul = (0..dim)
        .map(|g| (0..dim).map(|h| vec![(g ^ h, f.one())]).collect())
        .collect();
    FiniteAlgebra::new(
        "h_k4",
        f,
        vec!["g00".into(), "g01".into(), "g10".into(), "g11".into()],
        vec![(0, f.one())],
        mul,
    )
    .expect("group algebra is valid")
}

/// `Q[Z2 x Z2]` as a Hopf algebra over the base field, presented as a
/// bialgebroid with group-like coproduct. Fully verified.
pub fn hopf_k4() -> crate::bialgebroid::Bialgebroid {
    let h = algebra_k4_group();
    let f = Field::Q;
    let base = truncated_poly(1, f);
    let unit_col = LinMap::new(1, 4, vec![h.unit.clone()]);
    let coproduct = (0..4)
        .map(|g| crate::linalg::tensor(&h.basis_vec(g), &h.basis_vec(g), 4))
        .collect();
    let counit = LinMap::new(4, 1, (0..4).map(|_| vec![(0, f.one())]).collect());
    crate::bialgebroid::Bialgebroid::build(crate::bialgebroid::BialgebroidParts {
        total: h,
        base,
        source: unit_col.clone(),
        target: unit_col,
        coproduct,
        counit,
    })
    .expect("group algebra is a Hopf algebroid over the base field")
}

/// The sign 2-cocycle on `Z2 x Z2`: `γ((a,b),(c,d)) = (-1)^(a d)`,
/// returned as the full matrix of scalars on the group basis.
pub fn sign_cocycle_k4() -> Vec<Vec<Scalar>> {
    let f = Field::Q;
    (0..4usize)
        .map(|g| {
            (0..4usize)
                .map(|h| {
                    let a = (g >> 1) & 1;
                    let d = h & 1;
                    if a * d == 1 {
                        f.from_i64(-1)
                    } else {
                        f.one()
                    }
                })
                .collect()
        })
        .collect()
}

/// The commuting nilpotent derivations `x^2 ∂_x ⊗ 1` and `1 ⊗ y^2 ∂_y`
/// on [`algebra_bm`], as endomorphism matrices.
pub fn moyal_derivations_bm() -> (LinMap, LinMap) {
    let bm = algebra_bm();
    derivation_pair_on_square_tensor(&bm, 3, |i| xsq_dx_col(i, 3, Field::Q))
}

/// `∂_x ⊗ 1` and `1 ⊗ ∂_y` on the characteristic-p Moyal base.
pub fn moyal_derivations_char_p(p: u64) -> (LinMap, LinMap) {
    let bm = algebra_bm_char_p(p);
    let f = Field::Fp(p);
    let n = p as usize;
    derivation_pair_on_square_tensor(&bm, n, move |i| {
        // ∂_x(x^i) = i x^(i-1)
        if i == 0 {
            Vec::new()
        } else {
            vec![(i - 1, f.from_i64(i as i64))]
        }
    })
}

/// `x^2 ∂_x (x^i) = i x^(i+1)` on `k[x]/(x^n)`.
fn xsq_dx_col(i: usize, n: usize, field: Field) -> SparseVec {
    if i == 0 || i + 1 >= n {
        Vec::new()
    } else {
        vec![(i + 1, field.from_i64(i as i64))]
    }
}

/// The nilpotent derivation `x^2 ∂_x` on `k[x]/(x^n)`, for single-factor
/// mini fixtures.
pub fn xsq_dx_map(n: usize, field: Field) -> LinMap {
    LinMap::new(n, n, (0..n).map(|i| xsq_dx_col(i, n, field)).collect())
}

/// The closed-form twist data on a jet algebroid `J(B) = B^e` of a
/// commutative base: `Γ([a⊗b], [c⊗d]) = (a ∗ c) d b` with the star product
/// `u ∗ w = u w + θ D1(u) D2(w)` of two commuting nilpotent derivations.
pub fn moyal_gamma_matrix(
    b: &FiniteAlgebra,
    d1: &LinMap,
    d2: &LinMap,
    theta: Scalar,
) -> Vec<Vec<SparseVec>> {
    let d = b.dim;
    let star = |u: &SparseVec, w: &SparseVec| -> SparseVec {
        let plain = b.mul_vec(u, w);
        let corr = b.mul_vec(&d1.apply(u), &d2.apply(w));
        crate::linalg::normalize([plain, crate::linalg::scale(&corr, &theta)].concat())
    };
    (0..d * d)
        .map(|x| {
            let (i, j) = (x / d, x % d);
            (0..d * d)
                .map(|y| {
                    let (k, l) = (y / d, y % d);
                    let head = star(&b.basis_vec(i), &b.basis_vec(k));
                    b.mul_vec(&head, b.mul_basis(l, j))
                })
                .collect()
        })
        .collect()
}

/// The star product itself, for conformance comparisons.
pub fn star_product_table(
    b: &FiniteAlgebra,
    d1: &LinMap,
    d2: &LinMap,
    theta: &Scalar,
) -> Vec<Vec<SparseVec>> {
    (0..b.dim)
        .map(|i| {
            (0..b.dim)
                .map(|j| {
                    let plain = b.mul_basis(i, j).clone();
                    let corr = b.mul_vec(
                        &d1.apply(&b.basis_vec(i)),
                        &d2.apply(&b.basis_vec(j)),
                    );
                    crate::linalg::normalize(
                        [plain, crate::linalg::scale(&corr, theta)].concat(),
                    )
                })
                .collect()
        })
        .collect()
}

fn derivation_pair_on_square_tensor(
    alg: &FiniteAlgebra,
    factor_dim: usize,
    col: impl Fn(usize) -> SparseVec,
) -> (LinMap, LinMap) {
    let dim = alg.dim;
    assert_eq!(dim, factor_dim * factor_dim);
    let d1 = LinMap::new(
        dim,
        dim,
        (0..dim)
            .map(|t| {
                let (i, j) = (t / factor_dim, t % factor_dim);
                col(i)
                    .into_iter()
                    .map(|(k, c)| (kron(k, j, factor_dim), c))
                    .collect()
            })
            .collect(),
    );
    let d2 = LinMap::new(
        dim,
        dim,
        (0..dim)
            .map(|t| {
                let (i, j) = (t / factor_dim, t % factor_dim);
                col(j)
                    .into_iter()
                    .map(|(k, c)| (kron(i, k, factor_dim), c))
                    .collect()
            })
            .collect(),
    );
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn bm_is_dim_9_commutative() {
        let bm = algebra_bm();
        assert_eq!(bm.dim, 9);
        assert!(bm.commutative);
    }

    #[test]
    fn moyal_derivations_are_commuting_nilpotent_derivations() {
        let bm = algebra_bm();
        let (d1, d2) = moyal_derivations_bm();
        assert_eq!(d1.compose(&d2), d2.compose(&d1));
        let zero = LinMap::zero(bm.dim, bm.dim);
        assert_eq!(d1.compose(&d1), zero);
        assert_eq!(d2.compose(&d2), zero);
        // Leibniz on all basis pairs
        for i in 0..bm.dim {
            for j in 0..bm.dim {
                for d in [&d1, &d2] {
                    let lhs = d.apply(bm.mul_basis(i, j));
                    let rhs = linalg::normalize(
                        [
                            bm.mul_vec(&d.apply(&bm.basis_vec(i)), &bm.basis_vec(j)),
                            bm.mul_vec(&bm.basis_vec(i), &d.apply(&bm.basis_vec(j))),
                        ]
                        .concat(),
                    );
                    assert_eq!(lhs, rhs, "Leibniz fails at ({i},{j})");
                }
            }
        }
        // x^2 ∂_x sends basis 3 (= x) to basis 6 (= x^2)
        assert_eq!(d1.apply(&bm.basis_vec(3)), vec![(6, Field::Q.one())]);
    }

    #[test]
    fn k4_group_algebra() {
        let h = algebra_k4_group();
        assert_eq!(h.dim, 4);
        assert!(h.commutative);
        for g in 0..4 {
            assert_eq!(*h.mul_basis(g, g), h.basis_vec(0));
        }
    }

    #[test]
    fn sign_cocycle_values() {
        let g = sign_cocycle_k4();
        assert_eq!(g[2][1], Field::Q.from_i64(-1));
        assert_eq!(g[1][2], Field::Q.one());
        for i in 0..4 {
            assert!(g[0][i].is_one());
            assert!(g[i][0].is_one());
        }
    }

    #[test]
    fn char_p_derivations() {
        let (d1, d2) = moyal_derivations_char_p(3);
        assert_eq!(d1.compose(&d2), d2.compose(&d1));
        // ∂_x^3 = 0 on F_3[x]/(x^3) but ∂_x^2 != 0
        let d1sq = d1.compose(&d1);
        assert_eq!(d1sq.compose(&d1), LinMap::zero(9, 9));
        assert_ne!(d1sq, LinMap::zero(9, 9));
    }
}
