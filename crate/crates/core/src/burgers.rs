//! Inviscid Burgers' equation `u_t + (u²/2)_x = 0`.

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;

use crate::error::{check_finite, Fault};
use crate::flux::{add_upwind, lax_friedrichs_gamma};
use crate::model::{
    add_forcing, pointwise, rate, smooth_random_field, Forcing, Invariant, Rate, System, Variant,
};
use crate::sbp::{OpKind, Space};

/// Dissipation coefficient used by `variant` for state `u`.
pub fn burgers_gamma(variant: Variant, u: &[f64]) -> Result<f64, Fault> {
    match variant {
        Variant::EntropyConserving => Ok(0.0),
        _ => lax_friedrichs_gamma(u.len(), |i| u[i]),
    }
}

/// Semi-discrete rate for `u`.
///
/// Skew variants: `−⅓(u∘Du + D(u²)) + ½γ(D₊ − D₋)u`; the linearly stable
/// variant: `−D(u²/2) + ½γ(D₊ − D₋)u`. `D` is the central average.
pub fn rhs_burgers(
    space: &Space,
    variant: Variant,
    u: &[f64],
    out: &mut [f64],
) -> Result<(), Fault> {
    check_finite("u", u)?;
    let gamma = burgers_gamma(variant, u)?;
    let u2: Vec<f64> = u.iter().map(|v| v * v).collect();
    let du2 = space.d(0, OpKind::Central, &u2);
    if variant.is_skew() {
        let du = space.d(0, OpKind::Central, u);
        for i in 0..u.len() {
            out[i] = -(u[i] * du[i] + du2[i]) / 3.0;
        }
    } else {
        for i in 0..u.len() {
            out[i] = -0.5 * du2[i];
        }
    }
    add_upwind(space, 0, gamma, u, out);
    Ok(())
}

/// `E_h = ½⟨u, u⟩_H`.
pub fn burgers_entropy_total(space: &Space, u: &[f64]) -> f64 {
    0.5 * space.inner(u, u)
}

/// Manufactured solution `u* = 2 + 0.3 sin(2π(x − t))` and the forcing
/// `s = u*_t + u* u*_x` that makes it exact.
pub fn burgers_mms(x: f64, t: f64) -> (f64, f64) {
    let phase = 2.0 * PI * (x - t);
    let u = 2.0 + 0.3 * phase.sin();
    let s = 0.6 * PI * phase.cos() * (u - 1.0);
    (u, s)
}

pub struct Burgers {
    space: Space,
    variant: Variant,
    forcing: Option<Forcing>,
}

impl Burgers {
    pub fn new(space: Space, variant: Variant) -> Self {
        Self {
            space,
            variant,
            forcing: None,
        }
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn with_mms_forcing(self) -> Self {
        self.with_forcing(pointwise(|t, x, out| out[0] = burgers_mms(x[0], t).1))
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl System for Burgers {
    fn name(&self) -> &str {
        "burgers"
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn component_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn rhs(&self, t: f64, u: &[f64], du: &mut [f64]) -> Result<(), Fault> {
        rhs_burgers(&self.space, self.variant, u, du)?;
        if let Some(f) = &self.forcing {
            add_forcing(&self.space, f, t, du);
        }
        Ok(())
    }

    fn invariants(&self, u: &[f64]) -> Vec<Invariant> {
        let e = burgers_entropy_total(&self.space, u);
        vec![
            Invariant {
                name: "entropy",
                value: e,
                scale: e.abs(),
            },
            Invariant {
                name: "mass",
                value: self.space.integral(u),
                scale: self.space.abs_integral(u),
            },
        ]
    }

    fn conservation_rates(&self, _u: &[f64], du: &[f64]) -> Vec<Rate> {
        let one = vec![1.0; du.len()];
        vec![rate(&self.space, "mass", &[(&one, du)])]
    }

    fn entropy_variables(&self, u: &[f64]) -> Option<Vec<f64>> {
        self.variant.is_skew().then(|| u.to_vec())
    }

    fn dissipation_form(&self, u: &[f64]) -> Result<f64, Fault> {
        let gamma = burgers_gamma(self.variant, u)?;
        let d = self.space.d(0, OpKind::Upwind, u);
        Ok(0.5 * gamma * self.space.inner(u, &d))
    }

    fn random_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        smooth_random_field(&self.space, rng, 0.5, 1.5)
    }
}
