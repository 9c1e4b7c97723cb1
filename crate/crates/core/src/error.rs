use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("elements do not q-commute")]
    NotQCommuting,

    #[error("verification failed: {0}")]
    Verification(String),
}
