//! Upwind flux splitting: penalty coefficients and the dissipation term
//! `½ Γ (D₊ − D₋) g` shared by all scheme variants.

use crate::error::Fault;
use crate::sbp::{OpKind, Space};

/// Per-component dissipation coefficients `γ_i ≥ 0` for one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSpec {
    pub gammas: Vec<f64>,
}

impl SplitSpec {
    pub fn new(gammas: Vec<f64>) -> Self {
        debug_assert!(gammas.iter().all(|g| *g >= 0.0));
        Self { gammas }
    }

    pub fn zeros(components: usize) -> Self {
        Self {
            gammas: vec![0.0; components],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gammas.iter().all(|&g| g == 0.0)
    }
}

/// Global Lax–Friedrichs coefficient: the largest local wave speed.
pub fn lax_friedrichs_gamma(n: usize, speed: impl Fn(usize) -> f64) -> Result<f64, Fault> {
    let mut gamma: f64 = 0.0;
    for i in 0..n {
        let s = speed(i);
        if !s.is_finite() {
            return Err(Fault::NonFinite {
                component: "wave speed".into(),
                index: i,
            });
        }
        gamma = gamma.max(s.abs());
    }
    Ok(gamma)
}

/// Largest value of `f(i)` over the grid.
pub(crate) fn grid_max(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..n).map(f).fold(f64::NEG_INFINITY, f64::max)
}

/// `out += ½ γ (D₊ − D₋) g` along `axis`.
pub fn add_upwind(space: &Space, axis: usize, gamma: f64, g: &[f64], out: &mut [f64]) {
    if gamma == 0.0 {
        return;
    }
    let d = space.d(axis, OpKind::Upwind, g);
    let a = 0.5 * gamma;
    for (o, v) in out.iter_mut().zip(d) {
        *o += a * v;
    }
}

/// `½ Γ (D₊ − D₋) g` componentwise; `g` holds one field per coefficient.
pub fn upwind_dissipation(
    space: &Space,
    axis: usize,
    spec: &SplitSpec,
    g: &[Vec<f64>],
) -> Vec<Vec<f64>> {
    assert_eq!(spec.gammas.len(), g.len(), "component count");
    spec.gammas
        .iter()
        .zip(g)
        .map(|(&gamma, gi)| {
            let mut out = vec![0.0; gi.len()];
            add_upwind(space, axis, gamma, gi, &mut out);
            out
        })
        .collect()
}

/// `½ Σ_i γ_i ⟨g_i, (D₊ − D₋) g_i⟩_H`, the entropy production of the
/// dissipation term.
pub fn dissipation_form(space: &Space, axis: usize, spec: &SplitSpec, g: &[Vec<f64>]) -> f64 {
    spec.gammas
        .iter()
        .zip(g)
        .map(|(&gamma, gi)| {
            if gamma == 0.0 {
                0.0
            } else {
                0.5 * gamma * space.inner(gi, &space.d(axis, OpKind::Upwind, gi))
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::sbp::{periodic_pair, OperatorCoefficients};

    fn space(n: usize) -> Space {
        Space::one(periodic_pair(&OperatorCoefficients::dp2(), &Grid1D::unit(n).unwrap()).unwrap())
    }

    #[test]
    fn constant_burgers_speed() {
        let u = [2.0; 10];
        assert_eq!(lax_friedrichs_gamma(10, |i| u[i]).unwrap(), 2.0);
        let u = [-3.0, 1.0, 2.5];
        assert_eq!(lax_friedrichs_gamma(3, |i| u[i]).unwrap(), 3.0);
    }

    #[test]
    fn shallow_water_speed_at_rest() {
        let g: f64 = 9.81;
        let gamma = lax_friedrichs_gamma(4, |_| 0.0f64.abs() + (g * 1.0).sqrt()).unwrap();
        assert_eq!(gamma, g.sqrt());
    }

    #[test]
    fn non_finite_speed_is_a_fault() {
        assert!(lax_friedrichs_gamma(3, |i| if i == 1 { f64::NAN } else { 1.0 }).is_err());
    }

    #[test]
    fn zero_coefficients_give_zero() {
        let s = space(16);
        let g = vec![s.sample(|p| (6.0 * p[0]).sin())];
        let out = upwind_dissipation(&s, 0, &SplitSpec::zeros(1), &g);
        assert!(out[0].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dissipation_decays_under_refinement() {
        let amp = |n: usize| {
            let s = space(n);
            let g = vec![s.sample(|p| (2.0 * std::f64::consts::PI * p[0]).sin())];
            let d = &upwind_dissipation(&s, 0, &SplitSpec::new(vec![1.0]), &g)[0];
            // The closure rows of the periodic pair are only O(h) accurate.
            d[4..n - 4].iter().fold(0.0f64, |m, v| m.max(v.abs()))
        };
        let order = (amp(64) / amp(128)).ln() / (127.0f64 / 63.0).ln();
        // Interior stencil is a fourth difference scaled by h⁻¹.
        assert!(order >= 2.9, "observed {order}");
    }
}
