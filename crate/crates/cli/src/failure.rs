use std::fmt;
use std::process::ExitCode;

use rtwave::Error;

/// Command failure, split by exit status.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Solver(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Validation(_) => ExitCode::from(2),
            Failure::Solver(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "invalid input: {m}"),
            Failure::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => Failure::Validation(m),
            e @ (Error::Parse { .. }
            | Error::Domain { .. }
            | Error::InverseFailure { .. }
            | Error::NonPositiveDensity { .. }
            | Error::DegeneratePressure { .. }
            | Error::NotUnstableOrientation { .. }) => Failure::Validation(e.to_string()),
            e => Failure::Solver(e.to_string()),
        }
    }
}
