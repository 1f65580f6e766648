//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors raised by instance construction, gate application, and the
/// experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A build-time parameter is out of its allowed range (qubit count,
    /// circuit depth, budget, node count).
    #[error("configuration error: {0}")]
    Config(String),

    /// A qubit or coordinate index does not address the state it was
    /// applied to.
    #[error("index error: {0}")]
    Index(String),

    /// Runtime input is malformed (mismatched lengths, wrong problem kind,
    /// non-finite values, unparseable records).
    #[error("input error: {0}")]
    Input(String),

    /// A filesystem operation failed; carries the offending path.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code class: 1 for configuration and input problems,
    /// 2 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
