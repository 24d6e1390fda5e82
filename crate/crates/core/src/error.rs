use thiserror::Error;

/// Failure to read term, word or hypersequent text. Positions are byte offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected `{found}` at position {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("unknown generator `{name}` at position {pos} (use x, y, z or x<n>)")]
    UnknownGenerator { pos: usize, name: String },
    #[error("generator `{name}` at position {pos} exceeds declared arity {arity}")]
    ArityExceeded { pos: usize, name: String, arity: usize },
    #[error("empty input")]
    Empty,
}

/// Errors raised by the decision engines and certificate machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the identity cannot be used here: {0}")]
    IdentityInput(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("{0}")]
    Check(#[from] crate::calculus::CheckError),
    #[error("malformed certificate file: {0}")]
    Format(#[from] serde_json::Error),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
