//! Dual-pairing summation-by-parts discretizations of nonlinear hyperbolic
//! conservation laws on periodic structured grids.
//!
//! The crate provides the operators ([`sbp`]), upwind splittings
//! ([`flux`]), semi-discrete models for Burgers' equation ([`burgers`]), the
//! shallow water equations ([`swe`]) and the compressible Euler equations
//! ([`euler`]), an SSP Runge–Kutta driver ([`time`]), diagnostics and
//! property probes ([`diagnostics`]), and scenario configuration with file
//! output ([`harness`]).

pub mod burgers;
pub mod diagnostics;
pub mod error;
pub mod euler;
pub mod flux;
pub mod grid;
pub mod harness;
pub mod jet;
pub mod model;
pub mod sbp;
pub mod swe;
pub mod time;

pub use error::{Error, Fault, Result};
pub use grid::{Grid, Grid1D, Grid2D, GridField};
pub use model::{pointwise, Forcing, Invariant, Rate, System, Variant};
pub use sbp::{
    assemble_pair, build_order2_pair, make_periodic, verify_pair, DpOperatorPair, OpKind,
    OperatorCoefficients, Space, VerificationReport,
};
