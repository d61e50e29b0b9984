//! Finite-dimensional unital associative algebras presented by structure
//! constants, their opposites and enveloping algebras, and linear-map
//! classification (algebra map, antialgebra map, module maps).

use crate::error::AlgebraError;
use crate::linalg::{add_scaled, normalize, tensor, LinMap, SparseVec};
use crate::par;
use crate::report::{Check, VerificationReport};
use crate::scalar::Field;

/// A unital associative algebra over an exact field, with multiplication
/// given by the structure-constant table `mul[i][j]` = coefficients of
/// `e_i e_j` in the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub unit: SparseVec,
    mul: Vec<Vec<SparseVec>>,
    pub commutative: bool,
}

impl FiniteAlgebra {
    /// Build and verify an algebra. Associativity and the unit law are
    /// checked on all basis tuples; the commutativity flag is computed.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis_names: Vec<String>,
        unit: SparseVec,
        mul: Vec<Vec<SparseVec>>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        if mul.len() != dim || mul.iter().any(|row| row.len() != dim) {
            return Err(AlgebraError::Dimension(format!(
                "structure table must be {dim}x{dim}"
            )));
        }
        let mut a = FiniteAlgebra {
            name: name.into(),
            field,
            dim,
            basis_names,
            unit: normalize(unit),
            mul: mul
                .into_iter()
                .map(|row| row.into_iter().map(normalize).collect())
                .collect(),
            commutative: false,
        };

        let e = |i: usize| vec![(i, field.one())];
        if let Some(i) = (0..dim).find(|&i| {
            a.mul_vec(&a.unit, &e(i)) != e(i) || a.mul_vec(&e(i), &a.unit) != e(i)
        }) {
            return Err(AlgebraError::BadUnit { i });
        }
        let assoc_witness = par::find_witness(dim * dim * dim, |t| {
            let (i, j, k) = (t / (dim * dim), (t / dim) % dim, t % dim);
            let lhs = a.mul_vec(&a.mul_vec(&e(i), &e(j)), &e(k));
            let rhs = a.mul_vec(&e(i), &a.mul_vec(&e(j), &e(k)));
            (lhs != rhs).then_some((i, j, k))
        });
        if let Some((i, j, k)) = assoc_witness {
            return Err(AlgebraError::NotAssociative { i, j, k });
        }
        a.commutative = (0..dim).all(|i| (0..i).all(|j| a.mul[i][j] == a.mul[j][i]));
        Ok(a)
    }

    /// As [`FiniteAlgebra::new`], but additionally fails when the algebra
    /// turns out not to be commutative.
    pub fn new_commutative(
        name: impl Into<String>,
        field: Field,
        basis_names: Vec<String>,
        unit: SparseVec,
        mul: Vec<Vec<SparseVec>>,
    ) -> Result<Self, AlgebraError> {
        let a = Self::new(name, field, basis_names, unit, mul)?;
        if !a.commutative {
            let (i, j) = (0..a.dim)
                .flat_map(|i| (0..a.dim).map(move |j| (i, j)))
                .find(|&(i, j)| a.mul[i][j] != a.mul[j][i])
                .unwrap();
            return Err(AlgebraError::NotCommutative { i, j });
        }
        Ok(a)
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        vec![(i, self.field.one())]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i][j]
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                out = add_scaled(&out, &self.mul[*i][*j], &x.mul(y));
            }
        }
        out
    }

    pub fn is_unit_vec(&self, v: &SparseVec) -> bool {
        *v == self.unit
    }

    /// Left multiplication by `v` as a linear map.
    pub fn left_mul_map(&self, v: &SparseVec) -> LinMap {
        LinMap::new(
            self.dim,
            self.dim,
            (0..self.dim)
                .map(|j| self.mul_vec(v, &self.basis_vec(j)))
                .collect(),
        )
    }

    /// Right multiplication by `v` as a linear map.
    pub fn right_mul_map(&self, v: &SparseVec) -> LinMap {
        LinMap::new(
            self.dim,
            self.dim,
            (0..self.dim)
                .map(|j| self.mul_vec(&self.basis_vec(j), v))
                .collect(),
        )
    }

    /// The opposite algebra: same space, reversed multiplication.
    pub fn opposite(&self) -> FiniteAlgebra {
        FiniteAlgebra {
            name: format!("{}^op", self.name),
            field: self.field,
            dim: self.dim,
            basis_names: self.basis_names.clone(),
            unit: self.unit.clone(),
            mul: (0..self.dim)
                .map(|i| (0..self.dim).map(|j| self.mul[j][i].clone()).collect())
                .collect(),
            commutative: self.commutative,
        }
    }

    /// The enveloping algebra `B ⊗ B̄`, basis indexed by `i*dim + j` meaning
    /// `e_i ⊗ ē_j`. The product is `(a ⊗ ā')(c ⊗ c̄') = ac ⊗ (c'a')‾`.
    pub fn enveloping(&self) -> FiniteAlgebra {
        let d = self.dim;
        let names: Vec<String> = (0..d * d)
            .map(|t| format!("{}⊗{}", self.basis_names[t / d], self.basis_names[t % d]))
            .collect();
        let unit = tensor(&self.unit, &self.unit, d);
        let mul: Vec<Vec<SparseVec>> = (0..d * d)
            .map(|s| {
                let (i, j) = (s / d, s % d);
                (0..d * d)
                    .map(|t| {
                        let (k, l) = (t / d, t % d);
                        // first components multiply forward, second reversed
                        normalize(tensor(&self.mul[i][k], &self.mul[l][j], d))
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra {
            name: format!("{}^e", self.name),
            field: self.field,
            dim: d * d,
            basis_names: names,
            unit,
            mul,
            commutative: self.commutative,
        }
    }

    /// Format a vector in this algebra's basis, for witnesses and reports.
    pub fn format_vec(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis_names[*i].clone()
                } else {
                    format!("{c}*{}", self.basis_names[*i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Equality of the structure tensors (field, dimension, unit, table).
    pub fn structure_eq(&self, other: &FiniteAlgebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.mul == other.mul
    }
}

/// The kinds of linear maps [`check_map`] can classify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Multiplicative and unit-preserving.
    Algebra,
    /// Anti-multiplicative (`f(ab) = f(b)f(a)`) and unit-preserving.
    AntiAlgebra,
    /// Commutes with given left actions on source and destination.
    LeftLinear,
    /// Commutes with left and right actions on source and destination.
    Bimodule,
}

/// Actions of an algebra on the source and destination of a map under test.
pub struct ActionPair<'a> {
    pub algebra: &'a FiniteAlgebra,
    pub on_src: &'a [LinMap],
    pub on_dst: &'a [LinMap],
}

/// Check a linear map against the requested axioms; every failed axiom is
/// reported with its first counterexample basis pair.
pub fn check_map(
    f: &LinMap,
    kind: MapKind,
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
    actions: Option<(&ActionPair, Option<&ActionPair>)>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    match kind {
        MapKind::Algebra | MapKind::AntiAlgebra => {
            let unit_ok = f.apply(&src.unit) == dst.unit;
            report.push(Check::from_witness(
                "unit_preserved",
                (!unit_ok).then(|| format!("f(1) = {}", dst.format_vec(&f.apply(&src.unit)))),
            ));
            let w = par::find_witness(src.dim * src.dim, |t| {
                let (i, j) = (t / src.dim, t % src.dim);
                let lhs = f.apply(src.mul_basis(i, j));
                let rhs = match kind {
                    MapKind::Algebra => {
                        dst.mul_vec(&f.apply(&src.basis_vec(i)), &f.apply(&src.basis_vec(j)))
                    }
                    _ => dst.mul_vec(&f.apply(&src.basis_vec(j)), &f.apply(&src.basis_vec(i))),
                };
                (lhs != rhs).then(|| format!("basis pair ({i},{j})"))
            });
            let name = match kind {
                MapKind::Algebra => "multiplicative",
                _ => "anti_multiplicative",
            };
            report.push(Check::from_witness(name, w));
        }
        MapKind::LeftLinear | MapKind::Bimodule => {
            let (left, right) = actions.expect("module checks need actions");
            let w = par::find_witness(left.algebra.dim * f.src, |t| {
                let (b, m) = (t / f.src, t % f.src);
                let one = left.algebra.field.one();
                let lhs = f.apply(&left.on_src[b].apply(&vec![(m, one.clone())]));
                let rhs = left.on_dst[b].apply(&f.apply(&vec![(m, one)]));
                (lhs != rhs).then(|| format!("action basis {b}, vector basis {m}"))
            });
            report.push(Check::from_witness("left_linear", w));
            if kind == MapKind::Bimodule {
                let right = right.expect("bimodule check needs a right action pair");
                let w = par::find_witness(right.algebra.dim * f.src, |t| {
                    let (b, m) = (t / f.src, t % f.src);
                    let one = right.algebra.field.one();
                    let lhs = f.apply(&right.on_src[b].apply(&vec![(m, one.clone())]));
                    let rhs = right.on_dst[b].apply(&f.apply(&vec![(m, one)]));
                    (lhs != rhs).then(|| format!("action basis {b}, vector basis {m}"))
                });
                report.push(Check::from_witness("right_linear", w));
            }
        }
    }
    report
}
