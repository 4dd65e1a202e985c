use std::fmt;

use thiserror::Error;

/// A single violated scenario invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldError {
    pub field: &'static str,
    pub message: String,
}

impl FieldError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn join(errors: &[FieldError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scenario: {}", join(.0))]
    InvalidScenario(Vec<FieldError>),

    #[error("quantum number must be >= 1")]
    ZeroQuantumNumber,

    #[error("time must be > 0 (got {0} ms)")]
    NonPositiveTime(f64),

    #[error("non-finite argument: {0}")]
    NonFinite(&'static str),

    #[error("argument {re}{im:+}i outside the erf stability window |Im z| <= {limit}")]
    OutsideErfWindow { re: f64, im: f64, limit: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} > tolerance {tolerance:e}")]
    QuadratureDiverged { estimate: f64, tolerance: f64 },

    #[error("density {rho:e} below node threshold at x = {x} um, t = {t} ms")]
    Node { x: f64, t: f64, rho: f64 },

    #[error("invalid time series: {0}")]
    InvalidSeries(String),

    #[error("no probability crosses the detector")]
    ZeroDetection,

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("cannot parse {what} from '{input}'")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
