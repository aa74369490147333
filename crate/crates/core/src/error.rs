use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-integer coefficient: {0}")]
    NonInteger(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),
    #[error("non-reduced word at position {position}")]
    NonReducedWord { position: usize },
    #[error("unknown index label {0:?}")]
    UnknownLabel(String),
    #[error("weight of height {height} exceeds the configured bound {bound}")]
    HeightExceeded { height: u32, bound: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Corrupt(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
