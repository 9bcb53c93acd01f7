//! Library half of the command-line front end: file formats, subcommand
//! implementations and the error-to-exit-code mapping.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use format::{render_pretty, CircuitFile, ControlEntry, DiagonalFile, GateFile, RunEntry};
