use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid diagram: {invariant} ({detail})")]
    InvalidDiagram { invariant: &'static str, detail: String },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange { what: &'static str, index: usize, max: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),

    /// The image of a basis vector left the span of the `L` basis.
    #[error("instability: {generator} maps L[{weight}] outside the span of the L basis")]
    Instability { generator: String, weight: String },

    #[error("vector is not expressible in the p-basis: {0}")]
    NotExpressible(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    /// An internal consistency check failed. This indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
