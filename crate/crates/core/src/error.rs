use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("zeta has a pole at s = 1")]
    Pole,

    #[error("Euler-Maclaurin needs at least {needed} terms, got {given}")]
    InsufficientTerms { needed: usize, given: usize },

    #[error("accuracy target {target:e} missed: achieved bound {achieved:e}")]
    QualityMiss { target: f64, achieved: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("missing zero in Gram block [{first_gram}, {last_gram}]: expected {expected} sign changes, found {found}")]
    MissingZero {
        first_gram: i64,
        last_gram: i64,
        expected: usize,
        found: usize,
    },

    #[error("zero count mismatch: expected {expected}, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("need zeros {needed_lo}..={needed_hi} but the list holds {have_lo}..={have_hi}")]
    InsufficientZeros {
        needed_lo: i64,
        needed_hi: i64,
        have_lo: i64,
        have_hi: i64,
    },

    #[error("invalid height: {0}")]
    Height(String),

    #[error("{path}:{line}: {msg}")]
    Format {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("checksum mismatch in {0}")]
    Checksum(PathBuf),

    #[error("moment polynomial coefficients unavailable for k = {0}")]
    CoefficientsUnavailable(u32),

    #[error("leading coefficient of P_{k} is {found:e}, expected {expected:e}")]
    LeadingCoefficient { k: u32, found: f64, expected: f64 },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Error {
        Error::Format {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
