//! Command-line plumbing around the `invseq` library: counting dispatch,
//! verification suites, tree rendering, report formatting, and an OEIS
//! b-file client with on-disk caching.

pub mod dispatch;
pub mod oeis;
pub mod render;
pub mod report;
pub mod verify;

use thiserror::Error;

/// Process-level failure classes, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or an unsupported combination of them; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A check ran and did not hold, or a computation failed; exit code 1.
    #[error("{0}")]
    Failed(String),
    /// The OEIS client could not produce a sequence; exit code 3.
    #[error(transparent)]
    Network(#[from] oeis::OeisError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Network(_) => 3,
        }
    }
}
