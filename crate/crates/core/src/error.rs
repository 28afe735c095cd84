use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("constant differential polynomial has no leader")]
    ConstantHasNoLeader,

    #[error("zero polynomial has no leading power product")]
    ZeroPolynomial,

    #[error("basis matrices are linearly dependent (rank {rank} < {expected})")]
    DependentBasis { rank: usize, expected: usize },

    /// A Darboux polynomial that is not a scalar multiple of a power of the
    /// determinant. Never expected; surfaced so callers cannot miss it.
    #[error("Darboux classification inconsistency: {0}")]
    DarbouxInconsistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("determinant methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("{0}")]
    Unsupported(String),
}
