//! Verification harness: deterministic random-instance generation, grid
//! sweeps over the inequality chains, and report emission.
//!
//! Sweeps are embarrassingly parallel over (cell, trial) units. Each cell
//! derives its own RNG seed from the master seed and its coordinates, so
//! reports are byte-identical regardless of worker count; aggregation is
//! order-canonical. The `parallel` feature (on by default) backs the
//! sweep with rayon, with a sequential fallback when disabled.

pub mod config;
pub mod gen;
pub mod grid;
pub mod oracle;
pub mod report;
pub mod sensitivity;
pub mod sweep;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] opmeans::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, HarnessError>;
