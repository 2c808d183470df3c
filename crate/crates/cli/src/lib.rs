//! Library half of the `gal` tool: grid search and report emission.

pub mod report;
pub mod search;

pub use report::{emit_hits, emit_report, emit_sidecar, OutputFormat};
pub use search::{search_grid, Axis, Certify, PairError, SearchHit, SearchOutcome, SearchSpec, SearchStats};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gal_core::Error),

    #[error("invalid search: {0}")]
    InvalidSpec(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
