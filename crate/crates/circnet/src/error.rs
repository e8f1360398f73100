use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The CLI maps every variant to exit code 2; failed checks are not errors
/// and are reported through [`crate::cli::CheckReport`] instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("rank error: expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    #[error("topology error: {0}")]
    Topology(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("gauge error: {0}")]
    Gauge(String),

    #[error("membership error: {0}")]
    Membership(String),

    #[error("invariance error: {0}")]
    Invariance(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
