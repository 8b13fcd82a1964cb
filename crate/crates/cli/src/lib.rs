//! Command-line front end: JSON model files, the example corpus and reports.

pub mod commands;
pub mod corpus;
mod expr;
pub mod model;
pub mod report;

pub use commands::{parse_group, run, run_cli, Cli, CliError};
pub use model::{emit_model, parse_model, parse_model_str, resolve, Model, ModelError, ModelFile};
pub use report::{Report, Verdict};
