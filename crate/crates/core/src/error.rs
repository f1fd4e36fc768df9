use thiserror::Error;

/// Errors reported by the library.
///
/// Guard errors signal that an input exceeds the size this toolkit is
/// designed for; they are deliberate refusals, not failures of the input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("matrix has no homogeneity witness (no w with w . column = 1 for every column)")]
    Inhomogeneous,

    #[error("degree cap exceeded during reduction; the order may not terminate on this input")]
    DegreeCapExceeded,

    #[error("point is not a vertex of the polytope")]
    NotAVertex,

    /// An internal consistency check failed. This indicates a bug or a
    /// violated mathematical expectation, never bad user input.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
