//! The qt command line: verification suites over the shipped fixtures, an LMFDB client
//! with a content-addressed cache, and report output.

pub mod cache;
pub mod cli;
pub mod config;
pub mod lmfdb;
pub mod report;
pub mod suites;

pub use cache::{Cache, CacheEntry};
pub use config::QueryConfig;
pub use lmfdb::LmfdbClient;
pub use report::{emit_report, Check, Format, Report};
pub use suites::{run_suite, SUITES};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("transport error: {0}")]
    Transport(String),
    #[error("cache miss for {0} (offline)")]
    CacheMiss(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("bad response from {url}: {msg}")]
    Response { url: String, msg: String },
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 1 check failure, 2 usage error, 3 transport or cache error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Transport(_) | CliError::CacheMiss(_) | CliError::Cache(_) | CliError::Response { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
