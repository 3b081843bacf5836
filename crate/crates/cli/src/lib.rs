//! Scenario-driven front end for `mmwave-link`: parses TOML scenarios, runs
//! one of ten subcommands and writes CSV tables and SVG plots.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod csv;
pub mod error;
pub mod scenario;
pub mod svg;

use std::path::Path;

pub use commands::{run, Command, Outcome, Record, RunOptions};
pub use error::CliError;
pub use scenario::{parse_scenario, Scenario};

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&text)
}

/// Loads `path` and runs `command`. Artifacts are named after the scenario,
/// falling back to the file stem.
pub fn run_file(command: Command, path: &Path, opts: &RunOptions) -> Result<Outcome, CliError> {
    let scenario = load_scenario(path)?;
    let mut opts = opts.clone();
    if opts.stem.is_empty() && scenario.name.is_empty() {
        opts.stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    run(command, &scenario, &opts)
}
