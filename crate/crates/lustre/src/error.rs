//! Crate-wide error type.

use thiserror::Error;

/// Unified error for all library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of an operation
    /// (zero radius, out-of-range angle, empty lattice, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two lattices or grids that must agree in shape did not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A scene or configuration document failed validation.
    #[error("invalid scene: {0}")]
    Scene(String),

    /// A configuration key or value was not understood.
    #[error("invalid config: {0}")]
    Config(String),

    /// A file had the wrong magic, header, or payload size.
    #[error("malformed {format} file{}: {msg}", path.as_ref().map(|p| format!(" '{p}'")).unwrap_or_default())]
    Format {
        format: &'static str,
        path: Option<String>,
        msg: String,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for a [`Error::Domain`] value.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
