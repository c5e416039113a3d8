use std::io;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const BREAKDOWN: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },

    #[error("missing required setting `{0}`")]
    Missing(&'static str),

    #[error("{0}")]
    Model(#[from] casimir_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } | CliError::Missing(_) => exit::INVALID_INPUT,
            CliError::Model(e) if e.is_breakdown() => exit::BREAKDOWN,
            CliError::Model(
                casimir_core::Error::InvalidParameter { .. }
                | casimir_core::Error::UnsupportedMaterial { .. }
                | casimir_core::Error::Overlap(_),
            ) => exit::INVALID_INPUT,
            CliError::Model(_) | CliError::Io(_) => exit::FAILURE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
