use std::fmt;

use qwalk_core::Error;

/// Failure of a CLI run, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid input; exit code 2.
    Usage { flag: String, message: String },
    /// A numerical guard refused to compute; exit code 1.
    Numerical(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn usage(flag: &str, message: impl Into<String>) -> Self {
        Self::Usage {
            flag: flag.to_string(),
            message: message.into(),
        }
    }

    /// Maps a library error raised while handling `flag`.
    pub fn core(flag: &str, e: Error) -> Self {
        match e {
            Error::NotUnitary { .. }
            | Error::ReducibleCoin
            | Error::DiagonalCoin
            | Error::ZeroA
            | Error::ParameterOutOfDisk { .. }
            | Error::QubitNotNormalized { .. }
            | Error::InvalidSite(_)
            | Error::SizeTooSmall { .. }
            | Error::InvalidReport(_) => Self::usage(flag, e.to_string()),
            Error::TruncationTooSmall { .. }
            | Error::BranchPoint
            | Error::BoundaryZeta { .. }
            | Error::CuspParameter { .. }
            | Error::BorderlineA { .. }
            | Error::QuadratureNotConverged { .. }
            | Error::TooLarge { .. } => Self::Numerical(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage { .. } => 2,
            Self::Numerical(_) | Self::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage { flag, message } => write!(f, "invalid {flag}: {message}"),
            Self::Numerical(m) => write!(f, "numerical guard: {m}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
