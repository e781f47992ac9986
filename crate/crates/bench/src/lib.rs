//! Experiment grid runner and reporting layer for the GSSL classifiers.
//!
//! A benchmark run is a product grid over seeds × datasets × label fractions
//! × noise rates × one affinity spec × algorithm configurations. Each cell
//! samples a labeled subset, corrupts it, runs one classifier and records the
//! transductive accuracy; aggregation collapses seeds into mean ± std rows
//! that can be emitted as CSV, markdown tables or SVG plots.
//!
//! Everything is deterministic: a config fully determines every record, and
//! report bytes are identical across runs regardless of worker count.

pub mod acceptance;
pub mod config;
pub mod grid;
pub mod report;
pub mod stats;

pub mod cli;

use thiserror::Error;

/// Errors surfaced by the bench layer. `Config` variants exit the CLI with
/// status 1, everything else with status 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] gssl_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True when the error is the user's configuration rather than a runtime
    /// failure.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
