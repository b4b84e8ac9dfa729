use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no signal: spectrum carries zero total power")]
    NoSignal,

    #[error(
        "singular post-selection: amplification denominator {denominator:e} is numerically zero"
    )]
    SingularPostSelection { denominator: f64 },

    #[error("unbounded amplification: |gamma*cos(delta)| = {g} must be below 1")]
    UnboundedAmplification { g: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("detection-limited: no post-selection angle reaches the {snr_min_db} dB SNR floor (best {best_snr_db:.2} dB)")]
    DetectionLimited { snr_min_db: f64, best_snr_db: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Numerical failures (as opposed to bad input) during evaluation.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoSignal
                | Error::SingularPostSelection { .. }
                | Error::UnboundedAmplification { .. }
                | Error::DegenerateFit(_)
        )
    }
}
