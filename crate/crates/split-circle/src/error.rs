use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error("({0},{1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("split composition factors need at least 3 vertices")]
    FactorTooSmall,
    #[error("empty input")]
    Empty,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid enriched matrix: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("invalid parameter {k} for family {family}")]
    InvalidParameter { family: String, k: usize },
    #[error("no reduction script for this member")]
    NoScript,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input exceeds the oracle cap ({size} > {cap})")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("word is not a double occurrence word")]
    NotDoubleOccurrence,
    #[error("model construction requires a CircleOK verdict")]
    InvalidState,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CaseError {
    #[error("operation called on the wrong case kind")]
    WrongCase,
    #[error("decomposition preconditions not met")]
    NotDecomposable,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
