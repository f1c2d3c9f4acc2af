//! Front end for `pblab`: triple files, staged reports, seeded sampling of
//! random section triples and the golden regression scenarios.
//!
//! Exit codes: 0 success, 1 operational error, 2 mathematical rejection.

pub mod commands;
pub mod config;
pub mod input;
pub mod regress;
pub mod report;
pub mod sample;

use thiserror::Error;

pub use commands::{run, run_with_hooks, Exit};
pub use config::{Command, OutputFormat, RunConfig};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Input(#[from] input::InputError),
    #[error(transparent)]
    Chow(#[from] pblab_core::chow::ChowError),
}
