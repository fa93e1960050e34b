//! Output records and the exit-code contract.

use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;

use bohr_core::BohrError;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters (exit 2).
    Usage(String),
    /// A root solver could not produce a radius (exit 3).
    Solver(String),
    /// An inequality failed or no witness exists (exit 1).
    Failed(String),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Solver(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<BohrError> for CliError {
    fn from(e: BohrError) -> Self {
        let msg = e.to_string();
        match e {
            BohrError::NoRootInUnitInterval { .. }
            | BohrError::MultipleRoots { .. }
            | BohrError::ZeroLeadingCoefficient => CliError::Solver(msg),
            BohrError::NoWitnessFound { .. } => CliError::Failed(msg),
            BohrError::Domain(_)
            | BohrError::MissingParameter { .. }
            | BohrError::UnexpectedParameter { .. }
            | BohrError::RecipeParse(_)
            | BohrError::UnknownTheorem(_) => CliError::Usage(msg),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 2,
        })
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// A JSON record: the command echo followed by the result fields.
#[derive(Serialize)]
pub struct Record<'a, T: Serialize> {
    pub command: &'a Value,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn print_json<T: Serialize>(command: &Value, body: &T) -> CliResult {
    let text = serde_json::to_string_pretty(&Record { command, body })?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

pub fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::WriterBuilder::new().from_writer(io::stdout().lock())
}
