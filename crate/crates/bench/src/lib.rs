//! Fixtures shared by the benchmarks.

use dpsbp_core::{sbp, Grid1D, Result, Space};

/// Periodic order-2 space on `[0, 1]` (1D) or `[0, 1]²` (2D).
pub fn unit_space(n: usize, dims: usize) -> Result<Space> {
    let grid = Grid1D::unit(n)?;
    let pair = sbp::periodic_pair(&sbp::OperatorCoefficients::dp2(), &grid)?;
    Ok(match dims {
        1 => Space::one(pair),
        _ => Space::two(pair.clone(), pair),
    })
}

/// Smooth test field on the space.
pub fn smooth_field(space: &Space) -> Vec<f64> {
    space.sample(|p| {
        p.iter()
            .map(|x| (2.0 * std::f64::consts::PI * x).sin())
            .sum::<f64>()
            + 2.0
    })
}
