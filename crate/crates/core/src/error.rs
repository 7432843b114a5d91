use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands disagree on the number of variables, the truncation order,
    /// or the vector length.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A precondition on the input is violated (order, linear part, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),

    #[error("malformed tree encoding {input:?}: {reason}")]
    TreeParse { input: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}
