use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Total Hilbert-space dimension would exceed the configured cap.
    #[error("dimension {requested} exceeds the maximum total dimension {max}")]
    Capacity { requested: usize, max: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("operator is not hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("operator is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("non-finite value encountered")]
    NonFinite,

    /// A black-box operator does not act as a programmable network on the
    /// supplied program: its output is not a product state.
    #[error("output is not a product state (violation {violation:.3e})")]
    Structure { violation: f64 },

    #[error("control arrangement violated: {0}")]
    Arrangement(String),

    #[error("lattice does not encode the program: {0}")]
    EncodingMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("decomposition failed: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn shape(expected: impl std::fmt::Debug, found: impl std::fmt::Debug) -> Self {
        Error::ShapeMismatch {
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        }
    }
}
