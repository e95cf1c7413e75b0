use thiserror::Error;

/// Errors raised by generation, reconstruction and file handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or quantum number outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The nodal sequence is too short to locate the landmarks an algorithm needs.
    #[error("insufficient prefix: {0}")]
    InsufficientPrefix(String),

    /// The input cannot be the nodal sequence of a manifold in the declared class.
    #[error("inconsistent sequence: {0}")]
    InconsistentSequence(String),

    /// Scaled integer eigenvalue keys exceeded 128 bits.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("{}", match line {
        Some(l) => format!("parse error at line {l}: {message}"),
        None => format!("parse error: {message}"),
    })]
    Parse { line: Option<usize>, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
