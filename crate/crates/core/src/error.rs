use thiserror::Error;

use crate::graphs::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate label {0}")]
    DuplicateLabel(Label),

    #[error("unknown label {0}")]
    UnknownLabel(Label),

    #[error("ground set has {0} elements; at most 64 are supported")]
    GroundTooLarge(usize),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("polytope is not full-dimensional (dimension {dim} in ambient dimension {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("matroid axiom violated: {0}")]
    Axiom(crate::matroids::AxiomViolation),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
