use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Knot data or coefficient data that violates a structural invariant.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The input is well formed but does not satisfy the hypothesis of the
    /// statement being checked (e.g. a step map handed to a homeomorphism check).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A numerical precondition of a check failed (e.g. f(0) not centered).
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown family spec `{0}`")]
    FamilySpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
