use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns `Result<T>`;
/// panics are reserved for internal invariant violations (bugs).
#[derive(Debug, Error)]
pub enum Error {
    /// The requested Dynkin type label is not supported.
    #[error("unsupported Dynkin type: {0}")]
    UnsupportedType(String),

    /// The supplied arrow set does not orient the declared diagram.
    #[error("invalid quiver shape: {0}")]
    QuiverShape(String),

    /// A vector or matrix had a different length/size than the context expects.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An input vector was not a root / not a valid dimension vector for the call.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The work estimate for an enumeration exceeded the configured cap.
    #[error("budget exceeded in {what}: estimated {estimate} > cap {cap}")]
    BudgetExceeded {
        what: String,
        estimate: u128,
        cap: u128,
    },

    /// Exact interpolation failed (non-integral coefficients or held-out mismatch).
    #[error("interpolation failure: {0}")]
    Interpolation(String),

    /// Exact Laurent division left a remainder.
    #[error("non-exact division: {0}")]
    DivisionNotExact(String),

    /// A basis expansion did not terminate within the iteration cap.
    #[error("not in the span of the basis (residual after {0} iterations)")]
    NotInSpan(usize),

    /// The operation is defined, but not for these arguments.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// An internal consistency assertion failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
