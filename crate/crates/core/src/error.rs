use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("factor {index} is not a contraction (norm {norm:.6})")]
    FactorNotContractive { index: usize, norm: f64 },

    #[error("factor {index} is not pure (spectral radius {radius:.6})")]
    FactorNotPure { index: usize, radius: f64 },

    #[error("point lies outside the open polydisc (|coordinate| = {modulus:.6})")]
    PointOutsidePolydisc { modulus: f64 },

    #[error("truncation did not converge by degree {degree} (achieved {achieved:.3e})")]
    DegreeCapExceeded { degree: usize, achieved: f64 },

    #[error("resolvent is singular at the requested point")]
    ResolventSingular,

    #[error("margin {margin} must be smaller than degree {degree}")]
    MarginTooLarge { margin: usize, degree: usize },

    #[error("operator is not an orthogonal projection (residual {residual:.3e})")]
    NotProjection { residual: f64 },

    #[error("projections do not commute (residual {residual:.3e})")]
    NotCommuting { residual: f64 },

    #[error("projection drift {drift:.3e} exceeds tolerance {tolerance:.3e}")]
    ProjectionDriftExceedsTolerance { drift: f64, tolerance: f64 },

    #[error("subspace is not co-invariant (residual {residual:.3e})")]
    NotCoinvariant { residual: f64 },

    #[error("truncated space of dimension {dim} is too large for a dense computation")]
    SpaceTooLarge { dim: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}
