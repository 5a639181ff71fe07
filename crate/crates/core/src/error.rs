use thiserror::Error;

use crate::problem::ValidationError;

/// Errors raised across the interpolation pipeline.
///
/// Node indices carried by variants are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),

    #[error("matrix is not positive definite (pivot {pivot} failed)")]
    NotPositiveDefinite { pivot: usize },

    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("matrix is numerically singular")]
    Singular,

    #[error("polynomial has no coefficient above the drop tolerance")]
    DegenerateInput,

    #[error("gamma tuple is not admissible: Pick matrix fails positive definiteness at pivot {pivot}")]
    NotAdmissible { pivot: usize },

    #[error("gamma tuple has length {got}, expected {expected}")]
    GammaLength { expected: usize, got: usize },

    #[error("gamma entries must be finite and positive (entry {index} = {value})")]
    NonPositiveGamma { index: usize, value: f64 },

    #[error("function has a pole at {re}{im:+}i")]
    PoleAtPoint { re: f64, im: f64 },

    #[error("evaluation point is a pole of Theta (node {index})")]
    PoleAtNode { index: usize },

    #[error("function is not unimodular on the unit circle (max deviation {deviation:e})")]
    NotUnimodular { deviation: f64 },

    #[error("boundary derivative {value} at a unit point is negative")]
    NegativeDerivative { value: f64 },

    #[error("not a finite Blaschke product: {0}")]
    NotBlaschke(String),

    #[error("function misses the target at node {index} (residual {residual:e})")]
    NotASolution { index: usize, residual: f64 },

    #[error("all targets coincide; the only low-degree solution is constant")]
    ConstantProblem,

    #[error("no triple of targets shares the orientation of its nodes")]
    NoOrientedTriple,

    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("target pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("no node has boundary derivative below one")]
    NoHyperbolicPoint,

    #[error("matrix of order {order} is too large for principal-submatrix enumeration")]
    TooLarge { order: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
