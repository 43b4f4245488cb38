use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::format::FormatError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INFEASIBLE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const LIMIT_REACHED: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] flowlag_core::Error),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn format(path: &Path, source: FormatError) -> Self {
        CliError::Format { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(flowlag_core::Error::Infeasible { .. } | flowlag_core::Error::AllInfeasible) => {
                exit::INFEASIBLE
            }
            _ => exit::INVALID_INPUT,
        }
    }
}
