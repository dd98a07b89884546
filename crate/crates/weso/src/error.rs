use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: relation `{relation}` has arity {expected}, tuple has {found} entries")]
    ArityMismatch {
        line: usize,
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: element {element} out of range for universe of size {size}")]
    OutOfRange { line: usize, element: usize, size: usize },
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("expected a {expected} graph, found {found}")]
    GraphKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("graph has a universal vertex ({0})")]
    UniversalVertex(usize),
    #[error("graph needs at least 2 vertices, found {0}")]
    TooFewVertices(usize),
    #[error("self-witness unsupported: matrix holds with y = x")]
    SelfWitness,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("oracle budget exceeded: {what} of size {size} exceeds cap {cap}")]
    OracleBudget {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("clause width {width} exceeds {limit}")]
    ClauseWidth { width: usize, limit: usize },
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
