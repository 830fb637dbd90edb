//! Dual-pairing summation-by-parts operators.

mod banded;
mod coeffs;
mod pair;
mod space;
mod verify;

pub use banded::{BandedOp, SparseRow};
pub use coeffs::{parse_real, OperatorCoefficients};
pub use pair::{
    apply_1d, assemble_pair, assemble_pair_with, build_order2_pair, make_periodic,
    periodic_penalty, DiagonalNorm, DpOperatorPair, OpKind,
};
pub use space::{apply_2d, inner_product, Space};
pub use verify::{verify_pair, Check, EigenMethod, ExactnessRow, Tolerances, VerificationReport};

use std::path::Path;

use crate::error::Result;
use crate::grid::Grid1D;

/// Where operator coefficients come from: `builtin:<name>` or a file path.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSource {
    Builtin(String),
    File(std::path::PathBuf),
}

impl OperatorSource {
    pub fn parse(id: &str) -> Self {
        match id.strip_prefix("builtin:") {
            Some(name) => OperatorSource::Builtin(name.to_string()),
            None => OperatorSource::File(id.into()),
        }
    }

    pub fn coefficients(&self) -> Result<OperatorCoefficients> {
        match self {
            OperatorSource::Builtin(name) => OperatorCoefficients::builtin(name).ok_or_else(|| {
                crate::Error::Config(format!(
                    "unknown builtin operator `{name}` (known: dp2, central2)"
                ))
            }),
            OperatorSource::File(p) => OperatorCoefficients::from_file(Path::new(p)),
        }
    }
}

impl std::fmt::Display for OperatorSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorSource::Builtin(n) => write!(f, "builtin:{n}"),
            OperatorSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Assembled, verified, periodically closed pair on `grid`.
pub fn periodic_pair(coeffs: &OperatorCoefficients, grid: &Grid1D) -> Result<DpOperatorPair> {
    make_periodic(&assemble_pair(coeffs, grid)?)
}
