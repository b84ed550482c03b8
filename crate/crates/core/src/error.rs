use thiserror::Error;

/// Errors raised by the numerical kernels and the scenario runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("columns are rank deficient (column {column})")]
    RankDeficient { column: usize },

    #[error("derivative order {order} unsupported for basis of degree {degree}")]
    UnsupportedDerivative { order: usize, degree: usize },

    #[error("boundary region has zero measure")]
    ZeroMeasureRegion,

    #[error("unsupported for this basis: {0}")]
    UnsupportedForBasis(String),

    #[error("form is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotSemidefinite { eigenvalue: f64 },

    #[error("subspaces do not share the same metric")]
    MetricMismatch,

    #[error("subspaces intersect (alpha = {alpha})")]
    IntersectingSubspaces { alpha: f64 },

    #[error("subspace is trivial")]
    TrivialSubspace,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
