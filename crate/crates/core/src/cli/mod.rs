//! Model-file format and the command-line front end.

mod commands;
mod parse;
mod report;
pub mod selfcheck;

pub use commands::{main_with_args, run, Cli, CliError, Command, CorpusCommand};
pub use parse::{parse_description, parse_model, write_description, ModelFileError, ParseError};
pub use report::Report;
