use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("index {index} out of range for size {size}")]
    Bounds { index: usize, size: usize },

    #[error("capacity exceeded: {what} is {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{source_name}: {message}")]
    Input { source_name: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: "<input>".to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Replaces the placeholder source name of a parse error with a file name.
    pub fn with_source(self, name: &str) -> Self {
        match self {
            Error::Parse {
                line,
                column,
                message,
                ..
            } => Error::Parse {
                source_name: name.to_string(),
                line,
                column,
                message,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
