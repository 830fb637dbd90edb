use std::path::PathBuf;

use crate::sbp::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("grid too small: {0}")]
    Sizing(String),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("malformed operator coefficients: {0}")]
    Coefficients(String),
    #[error("operator `{name}` failed verification: {summary}")]
    Verification {
        name: String,
        summary: String,
        report: Box<VerificationReport>,
    },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Fault(#[from] Fault),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// A state that a right-hand side refuses to evaluate. During time
/// integration this ends the run and is recorded as a crash.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Fault {
    #[error("non-finite value in `{component}` at node {index}")]
    NonFinite { component: String, index: usize },
    #[error("non-positive `{quantity}` = {value} at node {index}")]
    Positivity {
        quantity: String,
        index: usize,
        value: f64,
    },
}

pub(crate) fn check_finite(component: &str, values: &[f64]) -> std::result::Result<(), Fault> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Fault::NonFinite {
            component: component.to_string(),
            index,
        }),
        None => Ok(()),
    }
}

pub(crate) fn check_positive(quantity: &str, values: &[f64]) -> std::result::Result<(), Fault> {
    check_finite(quantity, values)?;
    match values.iter().position(|&v| v <= 0.0) {
        Some(index) => Err(Fault::Positivity {
            quantity: quantity.to_string(),
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}
