use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Mathematical outcomes ("the law fails", "no isomorphism exists") are not
/// errors; they are reported through the dedicated report types. These
/// variants cover misuse, malformed input and broken invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for groupoid of order {order}")]
    Bounds { index: usize, order: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("subset is not closed: {left} * {right} = {product} lies outside it")]
    Closure {
        left: usize,
        right: usize,
        product: usize,
    },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unbound variable '{0}'")]
    UnboundVariable(char),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// A result that the underlying theory guarantees did not materialize.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
