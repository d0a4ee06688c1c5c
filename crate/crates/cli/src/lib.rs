//! `wald`: initial sequences and Waldschmidt constants of planar point
//! configurations from the command line.

pub mod checks;
pub mod commands;
pub mod config_file;
pub mod report;

use thiserror::Error;
use wald_core::WaldError;

pub use commands::{main_with, run_command, Cli};
pub use config_file::{parse_config, ConfigFile};
pub use report::{emit_report, Format, Report};

/// Everything that ends a run with exit code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {0}")]
    Io(String),

    #[error("malformed config: {0}")]
    MalformedConfig(String),

    #[error("point {row} is the zero triple, not a projective point")]
    ZeroPoint { row: usize },

    #[error("points {first} and {second} are the same projective point")]
    DuplicatePoints { first: usize, second: usize },

    #[error(transparent)]
    Core(#[from] WaldError),
}
