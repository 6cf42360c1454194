//! Session-file front end: parse `.fg` sessions, run their commands, and emit
//! reports as text, JSON or TSV.

pub mod report;
pub mod run;
pub mod session;

use std::fmt;

pub use report::{emit, emit_one, failed, EmitError, Format, SCHEMA_VERSION};
pub use run::{run, Report, RunError, RunOptions};
pub use session::{parse_session, Arg, Command, CommandKind, Diagnostic, ModuleExpr, Pos, Session, Value};

#[derive(Debug)]
pub enum CliError {
    Parse(Diagnostic),
    Run(RunError),
    Emit(EmitError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(d) => write!(f, "parse error at {d}"),
            CliError::Run(e) => write!(f, "runtime error at {e}"),
            CliError::Emit(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

pub struct Output {
    pub reports: Vec<Report>,
    pub text: String,
    pub failed: bool,
}

/// Parse, run and emit in one step.
pub fn execute(source: &str, opts: &RunOptions, format: Format) -> Result<Output, CliError> {
    let session = parse_session(source).map_err(CliError::Parse)?;
    let reports = run(&session, opts).map_err(CliError::Run)?;
    let text = emit(&reports, format).map_err(CliError::Emit)?;
    Ok(Output { failed: failed(&reports), reports, text })
}
