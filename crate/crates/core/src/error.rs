use thiserror::Error;

/// Errors raised by the matrix core, the scalar inequalities and the
/// inequality registry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size error: dimension {dim} exceeds cap {cap}")]
    Size { dim: usize, cap: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("variant {variant} is not defined for {id}")]
    Variant { id: String, variant: String },
}

pub type Result<T> = std::result::Result<T, Error>;
