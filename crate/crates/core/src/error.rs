use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Prüfer code: {0}")]
    MalformedCode(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    /// A result violated a property that holds by construction.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
