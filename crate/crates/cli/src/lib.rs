//! Script runner and REPL for quotient superrings.

pub mod session;
pub mod svg;

use std::collections::BTreeMap;

use serde::Serialize;

pub use session::{CommandError, Outcome, Record, Session, Status};
use superring::verdict::Tolerances;

/// Everything a script run produces.
#[derive(Debug, Serialize)]
pub struct Report {
    pub settings: Tolerances,
    pub results: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub status: Status,
}

/// A script error carrying the 1-based line it occurred on.
#[derive(Debug, thiserror::Error)]
#[error("line {line}: {source}")]
pub struct ScriptError {
    pub line: usize,
    pub source: CommandError,
}

/// Runs a whole script, stopping at `quit` or the first usage error.
pub fn run_script(session: &mut Session, script: &str) -> Result<(), ScriptError> {
    for (i, line) in script.lines().enumerate() {
        let outcomes = session.execute_line(line).map_err(|source| ScriptError { line: i + 1, source })?;
        if outcomes.iter().any(|o| matches!(o, Outcome::Quit)) {
            break;
        }
    }
    Ok(())
}

impl Report {
    pub fn from_session(session: Session) -> Report {
        let status = if session.any_failure() { Status::Fail } else { Status::Ok };
        Report { settings: session.settings().tol, results: session.results, records: session.records, status }
    }
}
