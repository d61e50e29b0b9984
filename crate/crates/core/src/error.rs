//! Error types for the engine. Verified-failure errors carry a witness
//! (basis indices and a short description) so reports can point at the
//! offending input.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("no solution: right-hand side outside the column space")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row},{col}) out of bounds")]
    OutOfBounds { row: usize, col: usize },
    #[error("duplicate sparse entry at ({row},{col})")]
    DuplicateEntry { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element e{i}")]
    BadUnit { i: usize },
    #[error("declared commutative but e{i} e{j} != e{j} e{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("missing {action} action for balanced tensor kind {kind}")]
    MissingAction {
        kind: &'static str,
        action: &'static str,
    },
    #[error("factor dimensions incompatible: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error("axiom `{name}` fails; witness: {witness}")]
    AxiomFailure { name: String, witness: String },
    #[error("not a left Hopf algebroid: lambda has rank {rank}, expected {expected}")]
    NotLeftHopf { rank: usize, expected: usize },
    #[error("not an anti-left Hopf algebroid: mu has rank {rank}, expected {expected}")]
    NotAntiLeftHopf { rank: usize, expected: usize },
    #[error("not a Hopf ideal: condition `{condition}` fails; witness: {witness}")]
    NotHopfIdeal { condition: String, witness: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("form does not descend to the balanced tensor product; witness: {0}")]
    NotBalanced(String),
    #[error("form is not left linear over the opposite base; witness: {0}")]
    NotLinear(String),
    #[error("2-cocycle condition fails; witness: {0}")]
    CocycleConditionFailed(String),
    #[error("counit normalization fails; witness: {0}")]
    CounitConditionFailed(String),
    #[error("cocycle not invertible on the tested comodule family; failing pair: {0}")]
    NotInvertibleCocycle(String),
    #[error("comodule pair dimensions incompatible: {0}")]
    DimensionMismatch(String),
    #[error("cocycle host does not match the twisted algebroid")]
    HostMismatch,
    #[error("cocycle is not convolution invertible")]
    NotConvolutionInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("base algebra is not commutative")]
    NotCommutative,
    #[error("ideal chain did not stabilize within {cap} steps")]
    NotStabilized { cap: usize },
    #[error("not a sub-bimodule of the universal calculus; witness: {0}")]
    NotSubBimodule(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("pairing axiom ({axiom}) fails; witness: {witness}")]
    PairingAxiomFailure { axiom: String, witness: String },
    #[error("operator does not factor through the jet ideal; witness: {0}")]
    FactorizationFailure(String),
    #[error("no Takeuchi class reproduces the action of operator {0}")]
    CoproductNotFactorizable(String),
    #[error("coproduct class for operator {0} is not unique (internal inconsistency)")]
    CoproductNotUnique(String),
    #[error("closed form `{form}` fails; witness: {witness}")]
    ConformanceFailure { form: String, witness: String },
    #[error("no nilpotent derivation recipe applies: {0}")]
    BadRecipe(String),
}

/// Top-level error for the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
