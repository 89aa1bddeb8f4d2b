//! Command-line front end for `symbreak-core`.

pub mod error;
pub mod spec;

mod args;
mod commands;
mod output;
mod verify;

pub use args::{Cli, Command, KRange, VerifyTarget};
pub use commands::run;
pub use error::{CliError, CliResult};
pub use spec::{parse_graph_spec, ParsedGraph};
