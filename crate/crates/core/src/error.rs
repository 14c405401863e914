use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("invalid vertex name `{0}`")]
    InvalidName(String),

    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { max: usize, got: usize },

    #[error("invalid edge {0}-{1}: {2}")]
    InvalidEdge(String, String, &'static str),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree leaves do not match the vertex set: {0}")]
    LabelMismatch(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid quartet instance: {0}")]
    InvalidInstance(String),

    #[error("order violates quartet {0}")]
    QuartetViolated(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
