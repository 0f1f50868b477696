//! Command-line front end: configuration files, pipeline drivers, run
//! reports, and CSV input/output.
//!
//! A run is described by a flat `key = value` configuration file, grouped by
//! dotted prefixes (`signal.omega = 6`).  Each pipeline reads its keys,
//! writes CSV artifacts plus a `report.txt` into the output directory, and
//! checks any `assert.<metric> = bound` entries against the metrics it
//! reported.  Outputs are deterministic: byte-identical across reruns and
//! thread counts.

mod config;
mod csv;
mod pipelines;
mod report;

pub use config::KeyValues;
pub use csv::{
    read_series_csv, write_grid_csv, write_orbit_csv, write_series_csv, write_spectrum_csv,
};
pub use pipelines::{run_nonradiating, run_recover_orbit, run_recover_source, run_simulate};
pub use report::{AssertOutcome, RunReport};

use thiserror::Error;

// --- errors ------------------------------------------------------------------

/// Problems with configuration or data files.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: expected 'key = value', got '{content}'")]
    Syntax { line: usize, content: String },
    #[error("missing required key '{0}'")]
    MissingKey(String),
    #[error("key '{key}' has value '{value}', expected {expected}")]
    BadValue {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("duplicate key '{0}'")]
    DuplicateKey(String),
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("{path}:{line}: {reason}")]
    Csv {
        path: String,
        line: usize,
        reason: String,
    },
}

/// Any failure a pipeline can surface: bad configuration, bad input data,
/// or an error from a numerical stage.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Validation(#[from] crate::core::ValidationError),
    #[error(transparent)]
    Field(#[from] crate::forward::FieldError),
    #[error(transparent)]
    Moment(#[from] crate::srcrec::MomentError),
    #[error(transparent)]
    Orbit(#[from] crate::orbit::OrbitError),
    #[error(transparent)]
    Transform(#[from] crate::transforms::TransformError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
