//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two operands have incompatible shapes.
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    /// A matrix or state entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// An argument is outside the admissible range of the operation.
    #[error("{0}")]
    Domain(String),

    /// A structural precondition on an input set is violated.
    #[error("{0}")]
    Precondition(String),

    /// A basis set's claim is inconsistent with its member count.
    #[error("{0}")]
    Claim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
