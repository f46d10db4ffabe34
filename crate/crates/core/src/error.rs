use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String, line: usize, col: usize },
    #[error("line {line}: malformed update: {msg}")]
    MalformedUpdate { line: usize, msg: String },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("non-integer coefficient {0}")]
    NonInteger(String),
}

pub type Result<T> = std::result::Result<T, Error>;
