use std::fmt;

use abcyl_core::Error;

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_REGIME: i32 = 3;
pub const EXIT_RESOLUTION: i32 = 4;

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    pub fn regime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_REGIME,
            message: message.into(),
        }
    }

    pub fn io(e: impl fmt::Display) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: format!("i/o error: {e}"),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfiniteGeometry | Error::GeometryMismatch(_) | Error::Regime(_) => EXIT_REGIME,
            Error::Resolution { .. } => EXIT_RESOLUTION,
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
