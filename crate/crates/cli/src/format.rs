//! Input file formats. Rational coefficients are serialized as "n" or
//! "n/d" strings so arbitrarily large integers survive the round trip.

use algebroid::algebra::FiniteAlgebra;
use algebroid::bialgebroid::{Bialgebroid, BialgebroidParts};
use algebroid::linalg::{LinMap, SparseVec};
use algebroid::{Field, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { #[serde(rename = "Fp")] p: u64 },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field, String> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Q),
            FieldSpec::Named(s) => Err(format!("unknown field {s:?}")),
            FieldSpec::Prime { p } => {
                if *p < 2 || (2..*p).any(|d| d * d <= *p && p % d == 0) {
                    return Err(format!("{p} is not prime"));
                }
                Ok(Field::Fp(*p))
            }
        }
    }
}

/// Sparse matrix entries `[row, col, "coeff"]`.
pub type MatrixSpec = Vec<(usize, usize, String)>;
/// Tensor-square entries `[x, i, j, "coeff"]`: coefficient of `e_i ⊗ e_j`
/// in the image of basis `x`.
pub type TensorSpec = Vec<(usize, usize, usize, String)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfSpec {
    pub coproduct: TensorSpec,
    pub counit: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomSpec {
    pub base: Box<AlgebraFile>,
    pub source: MatrixSpec,
    pub target: MatrixSpec,
    pub coproduct: TensorSpec,
    pub counit: MatrixSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Dense unit coefficient vector.
    pub unit: Vec<String>,
    /// Sparse structure constants `[i, j, k, num, den]`:
    /// the coefficient of `e_k` in `e_i e_j`.
    pub mul: Vec<(usize, usize, usize, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    /// Optional star-product recipe: two derivation matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<MatrixSpec>>,
    /// Optional Hopf-algebra structure over the base field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfSpec>,
    /// Optional explicit bialgebroid structure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bialgebroid: Option<CustomSpec>,
}

fn default_schema() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CocycleFile {
    Trivial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<String>,
    },
    /// Dense matrix of base-valued coefficients:
    /// entries `[i, j, [[k, "coeff"], ...]]` for `Γ(e_i, e_j)`.
    Matrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<String>,
        gamma: Vec<(usize, usize, Vec<(usize, String)>)>,
    },
    /// Recipe: dualize the exponential cocycle of two commuting nilpotent
    /// derivations through the canonical operator/jet pairing.
    Dualized {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<String>,
        derivations: Vec<MatrixSpec>,
        theta: String,
    },
}

fn parse_scalar(field: Field, s: &str) -> Result<Scalar, String> {
    Scalar::parse(field, s)
}

pub fn parse_sparse_vec(field: Field, entries: &[(usize, String)]) -> Result<SparseVec, String> {
    let mut out = SparseVec::new();
    for (i, s) in entries {
        let v = parse_scalar(field, s)?;
        if !v.is_zero() {
            out.push((*i, v));
        }
    }
    Ok(algebroid::linalg::normalize(out))
}

pub fn parse_matrix(field: Field, src: usize, dst: usize, spec: &MatrixSpec) -> Result<LinMap, String> {
    let mut cols = vec![SparseVec::new(); src];
    for (r, c, s) in spec {
        if *r >= dst || *c >= src {
            return Err(format!("matrix entry ({r},{c}) out of bounds"));
        }
        let v = parse_scalar(field, s)?;
        if !v.is_zero() {
            cols[*c].push((*r, v));
        }
    }
    Ok(LinMap::new(
        src,
        dst,
        cols.into_iter().map(algebroid::linalg::normalize).collect(),
    ))
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<FiniteAlgebra, String> {
        let field = self.field.to_field()?;
        if self.basis.len() != self.dim {
            return Err(format!(
                "dim is {} but {} basis names given",
                self.dim,
                self.basis.len()
            ));
        }
        {
            let mut sorted = self.basis.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != self.basis.len() {
                return Err("basis names must be unique".into());
            }
        }
        if self.unit.len() != self.dim {
            return Err("unit vector has the wrong length".into());
        }
        let unit: SparseVec = self
            .unit
            .iter()
            .enumerate()
            .map(|(i, s)| parse_scalar(field, s).map(|v| (i, v)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let mut mul = vec![vec![SparseVec::new(); self.dim]; self.dim];
        for (i, j, k, num, den) in &self.mul {
            if *i >= self.dim || *j >= self.dim || *k >= self.dim {
                return Err(format!("mul entry ({i},{j},{k}) out of bounds"));
            }
            let v = parse_scalar(field, &format!("{num}/{den}"))?;
            if algebroid::linalg::get(&mul[*i][*j], *k).is_some() {
                return Err(format!("duplicate mul entry at ({i},{j},{k})"));
            }
            if !v.is_zero() {
                mul[*i][*j].push((*k, v));
                mul[*i][*j] = algebroid::linalg::normalize(std::mem::take(&mut mul[*i][*j]));
            }
        }
        let alg = if self.commutative == Some(true) {
            FiniteAlgebra::new_commutative(&self.name, field, self.basis.clone(), unit, mul)
        } else {
            FiniteAlgebra::new(&self.name, field, self.basis.clone(), unit, mul)
        }
        .map_err(|e| e.to_string())?;
        Ok(alg)
    }

    /// The derivation recipe, when present.
    pub fn star_derivations(&self) -> Result<Option<(LinMap, LinMap)>, String> {
        let field = self.field.to_field()?;
        match &self.derivations {
            None => Ok(None),
            Some(list) if list.len() == 2 => {
                let d1 = parse_matrix(field, self.dim, self.dim, &list[0])?;
                let d2 = parse_matrix(field, self.dim, self.dim, &list[1])?;
                Ok(Some((d1, d2)))
            }
            Some(list) => Err(format!("expected 2 derivations, found {}", list.len())),
        }
    }

    /// Build the bialgebroid this file describes: an explicit structure, a
    /// Hopf algebra over the base field, or (by default) the pair Hopf
    /// algebroid. Returns an unverified assembly; callers run the suite.
    pub fn to_bialgebroid(&self, force_pair: bool) -> Result<Bialgebroid, String> {
        let alg = self.to_algebra()?;
        let field = alg.field;
        if !force_pair {
            if let Some(custom) = &self.bialgebroid {
                let base = custom.base.to_algebra()?;
                let n = alg.dim;
                let source = parse_matrix(field, base.dim, n, &custom.source)?;
                let target = parse_matrix(field, base.dim, n, &custom.target)?;
                let counit = parse_matrix(field, n, base.dim, &custom.counit)?;
                let mut coproduct = vec![SparseVec::new(); n];
                for (x, i, j, s) in &custom.coproduct {
                    let v = parse_scalar(field, s)?;
                    if !v.is_zero() {
                        coproduct[*x].push((i * n + j, v));
                    }
                }
                let coproduct = coproduct
                    .into_iter()
                    .map(algebroid::linalg::normalize)
                    .collect();
                return Ok(Bialgebroid::assemble(BialgebroidParts {
                    total: alg,
                    base,
                    source,
                    target,
                    coproduct,
                    counit,
                }));
            }
            if let Some(hopf) = &self.hopf {
                let base = algebroid::fixtures::truncated_poly(1, field);
                let n = alg.dim;
                if hopf.counit.len() != n {
                    return Err("counit vector has the wrong length".into());
                }
                let counit = LinMap::new(
                    n,
                    1,
                    hopf.counit
                        .iter()
                        .map(|s| {
                            parse_scalar(field, s).map(|v| {
                                if v.is_zero() {
                                    SparseVec::new()
                                } else {
                                    vec![(0, v)]
                                }
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                );
                let unit_col = LinMap::new(1, n, vec![alg.unit.clone()]);
                let mut coproduct = vec![SparseVec::new(); n];
                for (x, i, j, s) in &hopf.coproduct {
                    let v = parse_scalar(field, s)?;
                    if !v.is_zero() {
                        coproduct[*x].push((i * n + j, v));
                    }
                }
                let coproduct = coproduct
                    .into_iter()
                    .map(algebroid::linalg::normalize)
                    .collect();
                return Ok(Bialgebroid::assemble(BialgebroidParts {
                    total: alg,
                    base,
                    source: unit_col.clone(),
                    target: unit_col,
                    coproduct,
                    counit,
                }));
            }
        }
        Ok(Bialgebroid::assemble(algebroid::jet::pair_parts(&alg)))
    }
}

impl CocycleFile {
    pub fn display_name(&self) -> &str {
        match self {
            CocycleFile::Trivial { name, .. }
            | CocycleFile::Matrix { name, .. }
            | CocycleFile::Dualized { name, .. } => name.as_deref().unwrap_or("cocycle"),
        }
    }
}
