//! Command-line front end: document formats, reports and subcommands.

pub mod commands;
pub mod documents;
pub mod error;
pub mod report;

pub use commands::{run_command, Outcome};
pub use error::{CliError, CliResult};
