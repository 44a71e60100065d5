use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state has (near-)zero norm {norm:e}; cannot normalize")]
    AllZero { norm: f64 },

    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    #[error("invalid observable angle {name} = {value}")]
    InvalidAngle { name: &'static str, value: f64 },

    #[error("power rule exponent must be positive and finite, got {0}")]
    InvalidExponent(f64),

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("grid resolution {got} is below the minimum {min}")]
    GridTooSmall { got: usize, min: usize },

    #[error("state is not entangled (smaller Schmidt weight {0:e})")]
    NotEntangled(f64),

    #[error("solver did not converge: residual {residual:e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("sweep has no rows")]
    EmptySweep,

    #[error("invalid sweep range: m_start={m_start}, m_end={m_end}, steps={steps}")]
    InvalidSweep { m_start: f64, m_end: f64, steps: usize },

    #[error("invalid probability table for {key}: {reason}")]
    InvalidTable { key: String, reason: String },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("malformed box file {path}: {source}")]
    BoxFile {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
