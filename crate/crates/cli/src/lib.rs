//! Certificate suite, table emission and float cross-checks behind the
//! `g2skt` binary.

pub mod checks;
pub mod emit;
pub mod metric;
pub mod numeric;

use thiserror::Error;

pub const SCHEMA: &str = "g2skt/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] g2skt_core::Error),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

impl CliError {
    /// Process exit code; every error here is a bad-input condition.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
