//! Exact linear algebra: sparse vectors, row reduction, kernels, linear
//! solving and presented quotient spaces with a canonical section.
//!
//! Matrices are stored as sorted sparse rows. Reduced row echelon form is
//! unique for a given row space, so every construction that normalizes
//! through [`rref`] is deterministic regardless of elimination order.

use crate::error::LinalgError;
use crate::scalar::{Field, Scalar};

/// Sparse vector: sorted `(index, coefficient)` pairs, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Drop zero entries and merge duplicate indices (input need not be sorted).
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.add(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `a + c*b`, both sorted.
pub fn add_scaled(a: &SparseVec, b: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) => {
                if ia < ib {
                    out.push((*ia, va.clone()));
                    i += 1;
                } else if ib < ia {
                    out.push((*ib, vb.mul(c)));
                    j += 1;
                } else {
                    let s = va.add(&vb.mul(c));
                    if !s.is_zero() {
                        out.push((*ia, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, vb.mul(c)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

pub fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let minus_one = match b.first() {
        Some((_, c)) => c.field().from_i64(-1),
        None => return a.clone(),
    };
    add_scaled(a, b, &minus_one)
}

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

pub fn from_dense(row: &[Scalar]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Kronecker index of `(i, j)` when the second factor has dimension `dim_j`.
#[inline]
pub fn kron(i: usize, j: usize, dim_j: usize) -> usize {
    i * dim_j + j
}

/// Tensor product of sparse vectors, living in the Kronecker indexing.
pub fn tensor(a: &SparseVec, b: &SparseVec, dim_b: usize) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((kron(*i, *j, dim_b), x.mul(y)));
        }
    }
    // a ⊗ b indices are already strictly increasing in this iteration order
    out
}

/// A linear map stored column-wise: `cols[j]` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    pub src: usize,
    pub dst: usize,
    pub cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn new(src: usize, dst: usize, cols: Vec<SparseVec>) -> Self {
        assert_eq!(cols.len(), src);
        LinMap { src, dst, cols }
    }

    pub fn zero(src: usize, dst: usize) -> Self {
        LinMap {
            src,
            dst,
            cols: vec![Vec::new(); src],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        LinMap {
            src: n,
            dst: n,
            cols: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (j, c) in v {
            debug_assert!(*j < self.src);
            out = add_scaled(&out, &self.cols[*j], c);
        }
        out
    }

    pub fn compose(&self, inner: &LinMap) -> LinMap {
        assert_eq!(inner.dst, self.src);
        LinMap {
            src: inner.src,
            dst: self.dst,
            cols: inner.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Entries as rows, for reduction.
    pub fn to_matrix(&self) -> Matrix {
        let mut rows = vec![Vec::new(); self.dst];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i].push((j, c.clone()));
            }
        }
        Matrix {
            rows: self.dst,
            cols: self.src,
            data: rows.into_iter().map(normalize).collect(),
        }
    }
}

/// A matrix stored as sorted sparse rows. Dense input is accepted through
/// [`Matrix::from_dense`]; sparse triples through [`Matrix::from_triples`],
/// which rejects duplicate `(row, col)` keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some((i, _)) = r.last() {
                assert!(*i < cols, "entry out of bounds");
            }
        }
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix {
            rows: rows.len(),
            cols: ncols,
            data: rows.iter().map(|r| from_dense(r)).collect(),
        }
    }

    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: &[(usize, usize, Scalar)],
    ) -> Result<Self, LinalgError> {
        let mut data = vec![SparseVec::new(); rows];
        for (i, j, c) in triples {
            if *i >= rows || *j >= cols {
                return Err(LinalgError::OutOfBounds { row: *i, col: *j });
            }
            if get(&data[*i], *j).is_some() {
                return Err(LinalgError::DuplicateEntry { row: *i, col: *j });
            }
            let mut row = std::mem::take(&mut data[*i]);
            row.push((*j, c.clone()));
            data[*i] = normalize(row);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        get(&self.data[i], j)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![SparseVec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, c) in row {
                data[*j].push((i, c.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

/// Reduced row echelon form: nonzero rows sorted by pivot column, each pivot
/// normalized to 1 and the only nonzero entry in its column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    /// Reduced nonzero rows, ascending pivot columns.
    pub rows: Vec<SparseVec>,
    /// Strictly increasing pivot column indices, one per row.
    pub pivots: Vec<usize>,
    /// `pivot_of[c] = Some(row)` when column `c` is a pivot column.
    pivot_of: Vec<Option<usize>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` modulo the row space; the result has no support on pivot
    /// columns and is zero iff `v` lies in the row space. Rows are in
    /// reduced form (support = own pivot plus free columns), so a single
    /// left-to-right sweep suffices.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        let mut i = 0;
        while i < acc.len() {
            let (c, x) = acc[i].clone();
            match self.pivot_of[c] {
                Some(r) => {
                    acc = add_scaled(&acc, &self.rows[r], &x.neg());
                    i = acc.partition_point(|e| e.0 <= c);
                }
                None => i += 1,
            }
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the row basis, when `v` lies in the row space.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut acc = v.clone();
        let mut coords: SparseVec = Vec::new();
        let mut i = 0;
        while i < acc.len() {
            let (c, x) = acc[i].clone();
            match self.pivot_of[c] {
                Some(r) => {
                    coords.push((r, x.clone()));
                    acc = add_scaled(&acc, &self.rows[r], &x.neg());
                    i = acc.partition_point(|e| e.0 <= c);
                }
                None => i += 1,
            }
        }
        if acc.is_empty() {
            Some(normalize(coords))
        } else {
            None
        }
    }
}

/// Compute the reduced row echelon form of a set of sparse rows.
pub fn rref_rows(cols: usize, input: impl IntoIterator<Item = SparseVec>) -> Rref {
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    for mut row in input {
        // forward reduction against existing pivots; subtracting a pivot
        // row only touches columns at or after its leading column, so the
        // scan never needs to back up
        let mut i = 0;
        while i < row.len() {
            let (c, x) = row[i].clone();
            match pivot_of[c] {
                Some(r) => {
                    row = add_scaled(&row, &rows[r], &x.neg());
                    i = row.partition_point(|e| e.0 <= c);
                }
                None => i += 1,
            }
        }
        if row.is_empty() {
            continue;
        }
        let (lead, lead_val) = row[0].clone();
        let inv = lead_val.inv().expect("nonzero leading coefficient");
        row = scale(&row, &inv);
        pivot_of[lead] = Some(rows.len());
        rows.push(row);
        pivots.push(lead);
    }

    // sort rows by pivot column
    let mut paired: Vec<(usize, SparseVec)> = pivots.into_iter().zip(rows).collect();
    paired.sort_by_key(|e| e.0);
    let pivots: Vec<usize> = paired.iter().map(|e| e.0).collect();
    let mut rows: Vec<SparseVec> = paired.into_iter().map(|e| e.1).collect();
    let mut pivot_of = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_of[c] = Some(r);
    }

    // back-elimination, highest pivot first: each row chases its own
    // entries sitting on later pivot columns, which are already reduced
    for r in (0..rows.len()).rev() {
        let own = pivots[r];
        let mut i = 0;
        loop {
            let row = &rows[r];
            if i >= row.len() {
                break;
            }
            let (c, x) = row[i].clone();
            if c != own && pivot_of[c].is_some_and(|r2| r2 > r) {
                let r2 = pivot_of[c].unwrap();
                let updated = add_scaled(&rows[r], &rows[r2], &x.neg());
                rows[r] = updated;
                i = rows[r].partition_point(|e| e.0 <= c);
            } else {
                i += 1;
            }
        }
    }

    Rref {
        cols,
        rows,
        pivots,
        pivot_of,
    }
}

/// Reduced row echelon form of a matrix, together with its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let r = rref_rows(m.cols, m.data.iter().cloned());
    let mut data = r.rows.clone();
    data.resize(m.rows, Vec::new());
    (
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        r.pivots,
    )
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per non-pivot
/// column, in ascending column order (the rref free-variable convention).
/// The field of the entries cannot be inferred from an all-zero matrix, so
/// prefer [`kernel_basis_in`] when the ground field is known.
pub fn kernel_basis(m: &Matrix) -> Vec<SparseVec> {
    let field = m
        .data
        .iter()
        .flat_map(|row| row.first())
        .map(|(_, c)| c.field())
        .next()
        .unwrap_or(Field::Q);
    kernel_basis_in(m, field)
}

/// As [`kernel_basis`], with the ground field supplied explicitly.
pub fn kernel_basis_in(m: &Matrix, field: Field) -> Vec<SparseVec> {
    let r = rref_rows(m.cols, m.data.iter().cloned());
    // bucket the reduced rows' entries by (free) column
    let mut per_col: Vec<SparseVec> = vec![SparseVec::new(); m.cols];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (c, v) in row {
            if *c != p {
                per_col[*c].push((p, v.neg()));
            }
        }
    }
    let mut out = Vec::new();
    for f in 0..m.cols {
        if r.pivot_of[f].is_some() {
            continue;
        }
        let mut v: SparseVec = per_col[f].clone();
        v.push((f, field.one()));
        let v = normalize(v);
        debug_assert!(apply_rows(m, &v).is_empty(), "kernel vector check failed");
        out.push(v);
    }
    out
}

/// Row-matrix times column vector.
pub fn apply_rows(m: &Matrix, v: &SparseVec) -> SparseVec {
    let mut out: SparseVec = Vec::new();
    for (i, row) in m.data.iter().enumerate() {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (0, 0);
        while a < row.len() && b < v.len() {
            if row[a].0 < v[b].0 {
                a += 1;
            } else if v[b].0 < row[a].0 {
                b += 1;
            } else {
                let t = row[a].1.mul(&v[b].1);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
                a += 1;
                b += 1;
            }
        }
        if let Some(s) = acc {
            if !s.is_zero() {
                out.push((i, s));
            }
        }
    }
    out
}

/// Solve `a x = b` exactly. Free variables are set to zero under the rref
/// pivot convention, so the solution is deterministic.
pub fn solve(a: &Matrix, b: &SparseVec) -> Result<SparseVec, LinalgError> {
    let aug_cols = a.cols + 1;
    let rows = a.data.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        if let Some(c) = get(b, i) {
            r.push((a.cols, c.clone()));
        }
        r
    });
    let r = rref_rows(aug_cols, rows);
    let mut x: SparseVec = Vec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if p == a.cols {
            return Err(LinalgError::NoSolution);
        }
        if let Some(c) = get(row, a.cols) {
            x.push((p, c.clone()));
        }
    }
    let x = normalize(x);
    debug_assert!(
        sub(&apply_rows(a, &x), &normalize(b.clone())).is_empty(),
        "solve verification failed"
    );
    Ok(x)
}

/// Solve `m x = b` where `m` is given column-wise.
pub fn solve_map(m: &LinMap, b: &SparseVec) -> Result<SparseVec, LinalgError> {
    solve(&m.to_matrix(), b)
}

/// Solve `a x = b` for many right-hand sides with a single elimination.
/// Fails with `NoSolution` if any system is inconsistent; `Singular` when
/// the solution is not unique (the kernel of `a` is nontrivial).
pub fn solve_many(a: &Matrix, rhs: &[SparseVec]) -> Result<Vec<SparseVec>, LinalgError> {
    let k = rhs.len();
    let aug_cols = a.cols + k;
    let rows = a.data.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        for (j, b) in rhs.iter().enumerate() {
            if let Some(c) = get(b, i) {
                r.push((a.cols + j, c.clone()));
            }
        }
        r
    });
    let r = rref_rows(aug_cols, rows);
    // uniqueness: every unknown column must be a pivot
    if r.pivots.iter().take_while(|&&p| p < a.cols).count() < a.cols {
        return Err(LinalgError::Singular);
    }
    let mut out = vec![SparseVec::new(); k];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if p >= a.cols {
            return Err(LinalgError::NoSolution);
        }
        for (c, v) in row {
            if *c >= a.cols {
                out[*c - a.cols].push((p, v.clone()));
            }
        }
    }
    Ok(out.into_iter().map(normalize).collect())
}

/// Invert a square linear map; fails when it is not bijective.
pub fn invert_map(m: &LinMap) -> Result<LinMap, LinalgError> {
    if m.src != m.dst {
        return Err(LinalgError::NotSquare {
            rows: m.dst,
            cols: m.src,
        });
    }
    let a = m.to_matrix();
    let field = m
        .cols
        .iter()
        .flat_map(|c| c.first())
        .map(|(_, s)| s.field())
        .next()
        .unwrap_or(Field::Q);
    // one augmented elimination for all right-hand sides
    let n = m.src;
    let rows = a.data.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.push((n + i, field.one()));
        r
    });
    let r = rref_rows(2 * n, rows);
    if r.rank() < n || r.pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) {
        return Err(LinalgError::Singular);
    }
    let mut cols = vec![SparseVec::new(); n];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (j, c) in row {
            if *j >= n {
                cols[*j - n].push((p, c.clone()));
            }
        }
    }
    Ok(LinMap {
        src: n,
        dst: n,
        cols: cols.into_iter().map(normalize).collect(),
    })
}

/// A presented quotient of an ambient coordinate space by the row space of a
/// relation set. The canonical section is spanned by the non-pivot ambient
/// coordinates of the relations' rref, so class comparisons downstream are
/// plain coordinate equalities.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    relations: Rref,
    /// Ambient indices of the canonical section, ascending.
    pub section: Vec<usize>,
    /// ambient index -> section slot
    section_slot: Vec<Option<usize>>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: impl IntoIterator<Item = SparseVec>) -> Self {
        let r = rref_rows(ambient_dim, relations);
        let mut section = Vec::with_capacity(ambient_dim - r.rank());
        let mut section_slot = vec![None; ambient_dim];
        for c in 0..ambient_dim {
            if r.pivot_of[c].is_none() {
                section_slot[c] = Some(section.len());
                section.push(c);
            }
        }
        QuotientSpace {
            ambient_dim,
            relations: r,
            section,
            section_slot,
        }
    }

    pub fn identity(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.section.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    pub fn relations(&self) -> &Rref {
        &self.relations
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let reduced = self.relations.reduce(v);
        reduced
            .into_iter()
            .map(|(c, x)| {
                let slot = self.section_slot[c].expect("reduced vector on pivot column");
                (slot, x)
            })
            .collect()
    }

    /// Canonical ambient representative of a quotient vector.
    pub fn lift(&self, w: &SparseVec) -> SparseVec {
        w.iter().map(|(s, x)| (self.section[*s], x.clone())).collect()
    }

    pub fn project_map(&self, field: Field) -> LinMap {
        LinMap::new(
            self.ambient_dim,
            self.dim(),
            (0..self.ambient_dim)
                .map(|i| self.project(&vec![(i, field.one())]))
                .collect(),
        )
    }

    pub fn lift_map(&self, field: Field) -> LinMap {
        LinMap::new(
            self.dim(),
            self.ambient_dim,
            (0..self.dim())
                .map(|s| vec![(self.section[s], field.one())])
                .collect(),
        )
    }

    /// Two ambient vectors representing the same class.
    pub fn classes_equal(&self, a: &SparseVec, b: &SparseVec) -> bool {
        self.relations.contains(&sub(a, b))
    }
}

/// A subspace of an ambient coordinate space, stored by its canonical
/// (rref) basis so equality of subspaces is equality of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    basis: Rref,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        Subspace {
            ambient_dim,
            basis: rref_rows(ambient_dim, vectors),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis.rows
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.basis.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(
            self.ambient_dim,
            self.basis().iter().chain(other.basis()).cloned(),
        )
    }

    /// Zassenhaus: rref the block matrix [[U | U], [W | 0]]; rows supported
    /// only on the right block give the intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let n = self.ambient_dim;
        let mut rows: Vec<SparseVec> = Vec::new();
        for u in self.basis() {
            let mut row = u.clone();
            row.extend(u.iter().map(|(i, c)| (i + n, c.clone())));
            rows.push(row);
        }
        for w in other.basis() {
            rows.push(w.clone());
        }
        let r = rref_rows(2 * n, rows);
        let inter = r
            .rows
            .iter()
            .filter(|row| row.first().is_some_and(|(c, _)| *c >= n))
            .map(|row| row.iter().map(|(c, x)| (c - n, x.clone())).collect());
        Subspace::span(n, inter)
    }
}
