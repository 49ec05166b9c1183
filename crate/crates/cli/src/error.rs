use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("LayerMismatch: {0}")]
    LayerMismatch(String),
    #[error("UnboundVariable: {0}")]
    Unbound(String),
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Core(#[from] surreal_core::Error),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
