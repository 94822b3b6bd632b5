use thiserror::Error;

#[derive(Error, Debug)]
pub enum CastError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("symmetry order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unknown built-in rule set: {0}")]
    UnknownBuiltin(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
