//! Batch front end: scenario checks, golden examples, finite-space surveys
//! and certificate replay.

pub mod catalog;
pub mod error;
pub mod report;
pub mod scenario;
pub mod survey;

use std::fs;
use std::path::Path;

pub use catalog::{reproduce, CATALOG};
pub use error::CliError;
pub use report::{replay_report, Entry, ReplaySummary, RunReport};
pub use scenario::{parse_scenarios, run_scenarios, RunOptions, Scenario, ScenarioFile};
pub use survey::{survey_rows, write_csv};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

/// `check`: parse, run and report a scenario file.
pub fn check_file(path: &Path, opts: RunOptions) -> Result<RunReport, CliError> {
    let file = parse_scenarios(&read_file(path)?)?;
    run_scenarios(&file, opts)
}

/// `reproduce`: one catalog entry, or the whole catalog for `all`.
pub fn reproduce_ids(id: &str, depth: usize) -> Result<RunReport, CliError> {
    let ids: Vec<&str> = if id == "all" { CATALOG.to_vec() } else { vec![id] };
    let entries = ids.into_iter().map(|i| reproduce(i, depth)).collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::new("reproduce", entries))
}

/// `replay`: re-verifies every certificate in a saved report.
pub fn replay_file(path: &Path) -> Result<ReplaySummary, CliError> {
    let report: RunReport = error::parse_json(&read_file(path)?)?;
    Ok(replay_report(&report))
}
