use thiserror::Error;

/// Failures of a harness run, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("malformed record on line {line} of {path}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error(transparent)]
    Eval(#[from] callebaut::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => crate::EXIT_CONFIG,
            _ => crate::EXIT_FAIL,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.display().to_string(), source }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
