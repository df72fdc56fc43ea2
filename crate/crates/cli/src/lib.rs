//! Command implementations behind the `restrictor` binary.
//!
//! Every command returns an [`Outcome`]: the rendered text and the exit code.
//! Exit codes are 0 (satisfied / determined), 1 (nothing satisfied),
//! 2 (input error) and 3 (undetermined cohomology case).

pub mod commands;
pub mod document;
pub mod render;
pub mod svg;

use thiserror::Error;

pub use document::{parse_document, OutputFormat, Problem};

pub const EXIT_SATISFIED: u8 = 0;
pub const EXIT_UNSATISFIED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_UNDETERMINED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] restrictor_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(restrictor_core::Error::UndeterminedCase { .. }) => EXIT_UNDETERMINED,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}
