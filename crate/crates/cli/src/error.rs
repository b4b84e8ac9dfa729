use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: wva_core::Error,
    },

    #[error(transparent)]
    Core(#[from] wva_core::Error),

    #[error("{path}: {source}")]
    Output { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 ok, 1 output failure, 2 config or usage, 3 numerical, 4 detection-limited.
    pub fn exit_code(&self) -> u8 {
        use wva_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Output { .. } => 1,
            CliError::Core(e) => match e {
                E::DetectionLimited { .. } => 4,
                e if e.is_numerical() => 3,
                E::Io(_) => 1,
                _ => 2,
            },
        }
    }
}
