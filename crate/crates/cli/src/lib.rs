//! The `semiloop` command line: table files, argument parsing and the
//! subcommands, usable as a library.

pub mod args;
pub mod commands;
pub mod error;
pub mod files;

pub use args::{Cli, Command, Format};
pub use commands::{exit_code, run, Status};
pub use error::{CliError, CliResult};
pub use files::{ExternalSpecFile, TableFile, TableKind};
