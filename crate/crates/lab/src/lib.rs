//! Experiment harness for `charsum-core`: configuration, parallel scans and
//! reproducible reports.

pub mod config;
pub mod experiments;
pub mod identities;
pub mod report;
pub mod table;

use std::path::PathBuf;

pub use config::Config;
pub use experiments::{run_experiment, EXPERIMENTS};
pub use report::{emit, read_report, Format, ScanReport};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] charsum_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
