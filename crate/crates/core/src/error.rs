use std::path::PathBuf;

use thiserror::Error;

use crate::quad::QuadError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("requested accuracy {requested:e} is below the floor {floor:e} of the {method} method at t = {t}")]
    AccuracyUnreachable {
        t: f64,
        requested: f64,
        floor: f64,
        method: &'static str,
    },

    #[error("solver did not converge for {what}: bracket [{lo}, {hi}] after {iterations} iterations")]
    Convergence {
        what: String,
        lo: f64,
        hi: f64,
        iterations: usize,
    },

    #[error("interval endpoints out of order: a = {a} > b = {b}")]
    Ordering { a: f64, b: f64 },

    #[error("Bessel zero table ends at {max_zero} but t = {needed} must be covered")]
    TableCoverage { needed: f64, max_zero: f64 },

    #[error("{what} = {value} is outside the covered range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("target {target} is not bracketed by g(lo) = {g_lo}, g(hi) = {g_hi}")]
    Bracket { target: f64, g_lo: f64, g_hi: f64 },

    #[error("function is not monotone on [{lo}, {hi}]")]
    NonMonotone { lo: f64, hi: f64 },

    #[error(transparent)]
    Quadrature(#[from] QuadError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Gram interval nu = {nu} is not admissible (use force to evaluate anyway)")]
    Inadmissible { nu: u64 },

    #[error("sieve limit {limit} exceeded by t = {t}")]
    LimitExceeded { t: f64, limit: u64 },

    #[error("ladder format: {0}")]
    Format(String),

    #[error("fixture {path}: {message}")]
    Fixture { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
