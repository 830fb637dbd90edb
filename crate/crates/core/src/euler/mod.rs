//! Compressible Euler equations: the square-root-variable skew-symmetric form
//! with entropy stable dissipation, and the conservative form with global
//! Lax–Friedrichs splitting.

mod conservative;
pub mod scenarios;
mod skew;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Fault};
use crate::model::{
    add_forcing, component, rate, smooth_random_field, Forcing, Invariant, Rate, System, Variant,
};
use crate::sbp::Space;

pub use conservative::rhs_euler_conservative;
pub use skew::{euler_dissipation_form, euler_skew_gammas, rhs_euler_skew};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParams {
    /// Ratio of specific heats.
    pub gamma: f64,
}

impl Default for EulerParams {
    fn default() -> Self {
        Self { gamma: 1.4 }
    }
}

impl EulerParams {
    pub fn new(gamma: f64) -> Result<Self, Error> {
        if gamma > 1.0 {
            Ok(Self { gamma })
        } else {
            Err(Error::Config(format!(
                "ratio of specific heats must exceed 1, got {gamma}"
            )))
        }
    }
}

/// Primitive fields `ρ, velocity components, p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    pub rho: Vec<f64>,
    pub vel: Vec<Vec<f64>>,
    pub p: Vec<f64>,
}

/// `(√ρ, √ρu[, √ρv], √p)` laid out component after component.
pub fn primitive_to_skew(prim: &Primitive) -> Result<Vec<f64>, Fault> {
    crate::error::check_positive("rho", &prim.rho)?;
    crate::error::check_positive("p", &prim.p)?;
    let r: Vec<f64> = prim.rho.iter().map(|v| v.sqrt()).collect();
    let mut out = r.clone();
    for v in &prim.vel {
        out.extend(r.iter().zip(v).map(|(a, b)| a * b));
    }
    out.extend(prim.p.iter().map(|v| v.sqrt()));
    Ok(out)
}

pub fn skew_to_primitive(state: &[f64], n: usize) -> Primitive {
    let comps = state.len() / n;
    let r = component(state, n, 0);
    Primitive {
        rho: r.iter().map(|v| v * v).collect(),
        vel: (1..comps - 1)
            .map(|k| {
                component(state, n, k)
                    .iter()
                    .zip(r)
                    .map(|(m, r)| m / r)
                    .collect()
            })
            .collect(),
        p: component(state, n, comps - 1)
            .iter()
            .map(|q| q * q)
            .collect(),
    }
}

pub fn primitive_to_conservative(prim: &Primitive, gamma: f64) -> Vec<f64> {
    let n = prim.rho.len();
    let mut out = prim.rho.clone();
    for v in &prim.vel {
        out.extend(prim.rho.iter().zip(v).map(|(a, b)| a * b));
    }
    out.extend((0..n).map(|i| {
        let ke: f64 = prim.vel.iter().map(|v| v[i] * v[i]).sum();
        prim.p[i] / (gamma - 1.0) + 0.5 * prim.rho[i] * ke
    }));
    out
}

pub fn conservative_to_primitive(state: &[f64], n: usize, gamma: f64) -> Primitive {
    let comps = state.len() / n;
    let rho = component(state, n, 0).to_vec();
    let vel: Vec<Vec<f64>> = (1..comps - 1)
        .map(|k| {
            component(state, n, k)
                .iter()
                .zip(&rho)
                .map(|(m, r)| m / r)
                .collect()
        })
        .collect();
    let e = component(state, n, comps - 1);
    let p = (0..n)
        .map(|i| {
            let ke: f64 = vel.iter().map(|v| v[i] * v[i]).sum();
            (gamma - 1.0) * (e[i] - 0.5 * rho[i] * ke)
        })
        .collect();
    Primitive { rho, vel, p }
}

/// `⟨1, r² + ½|m|² + q²/(γ − 1)⟩_H`, the entropy of the skew form.
pub fn euler_energy_total(space: &Space, gamma: f64, prim: &Primitive) -> f64 {
    let e: Vec<f64> = (0..space.len())
        .map(|i| {
            let ke: f64 = prim.vel.iter().map(|v| v[i] * v[i]).sum();
            prim.rho[i] * (1.0 + 0.5 * ke) + prim.p[i] / (gamma - 1.0)
        })
        .collect();
    space.integral(&e)
}

/// `⟨1, ρ(ln p − γ ln ρ)/(γ − 1)⟩_H`.
pub fn euler_thermo_entropy_total(
    space: &Space,
    gamma: f64,
    prim: &Primitive,
) -> Result<f64, Fault> {
    crate::error::check_positive("rho", &prim.rho)?;
    crate::error::check_positive("p", &prim.p)?;
    let s: Vec<f64> = prim
        .rho
        .iter()
        .zip(&prim.p)
        .map(|(r, p)| r * (p.ln() - gamma * r.ln()) / (gamma - 1.0))
        .collect();
    Ok(space.integral(&s))
}

/// Invariant record for primitive fields.
pub fn euler_diagnostics(space: &Space, gamma: f64, prim: &Primitive) -> Vec<Invariant> {
    let n = space.len();
    let entropy = euler_energy_total(space, gamma, prim);
    let mut out = vec![
        Invariant {
            name: "entropy",
            value: entropy,
            scale: entropy.abs(),
        },
        Invariant {
            name: "mass",
            value: space.integral(&prim.rho),
            scale: space.abs_integral(&prim.rho),
        },
    ];
    for (k, v) in prim.vel.iter().enumerate() {
        let m: Vec<f64> = prim.rho.iter().zip(v).map(|(a, b)| a * b).collect();
        out.push(Invariant {
            name: ["momentum_x", "momentum_y"][k],
            value: space.integral(&m),
            scale: space.abs_integral(&m),
        });
    }
    let e: Vec<f64> = (0..n)
        .map(|i| {
            let ke: f64 = prim.vel.iter().map(|v| v[i] * v[i]).sum();
            prim.p[i] / (gamma - 1.0) + 0.5 * prim.rho[i] * ke
        })
        .collect();
    let energy = space.integral(&e);
    out.push(Invariant {
        name: "total_energy",
        value: energy,
        scale: energy.abs(),
    });
    let s = euler_thermo_entropy_total(space, gamma, prim).unwrap_or(f64::NAN);
    let s_scale: f64 = (0..n)
        .map(|i| {
            let r = prim.rho[i];
            space.weights()[i] * (r * (prim.p[i].ln() - gamma * r.ln()) / (gamma - 1.0)).abs()
        })
        .sum();
    out.push(Invariant {
        name: "thermodynamic_entropy",
        value: s,
        scale: s_scale,
    });
    out
}

/// Skew-symmetric variants evolve `(√ρ, √ρu[, √ρv], √p)`; the linearly
/// stable variant evolves `(ρ, ρu[, ρv], E)`.
pub struct Euler {
    space: Space,
    params: EulerParams,
    variant: Variant,
    forcing: Option<Forcing>,
}

impl Euler {
    pub fn new(space: Space, params: EulerParams, variant: Variant) -> Self {
        Self {
            space,
            params,
            variant,
            forcing: None,
        }
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn params(&self) -> EulerParams {
        self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn state_from_primitive(&self, prim: &Primitive) -> Result<Vec<f64>, Fault> {
        if self.variant.is_skew() {
            primitive_to_skew(prim)
        } else {
            Ok(primitive_to_conservative(prim, self.params.gamma))
        }
    }

    pub fn primitive(&self, state: &[f64]) -> Primitive {
        let n = self.space.len();
        if self.variant.is_skew() {
            skew_to_primitive(state, n)
        } else {
            conservative_to_primitive(state, n, self.params.gamma)
        }
    }

    /// Samples `f(x) -> (ρ, u, v, p)`; only the first `dims` velocities are kept.
    pub fn sample(&self, f: impl Fn(&[f64]) -> [f64; 4]) -> Result<Vec<f64>, Fault> {
        let d = self.space.dims();
        let field = |c: usize| self.space.sample(|p| f(p)[c]);
        let prim = Primitive {
            rho: field(0),
            vel: (0..d).map(|k| field(1 + k)).collect(),
            p: field(3),
        };
        self.state_from_primitive(&prim)
    }
}

impl System for Euler {
    fn name(&self) -> &str {
        "euler"
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn component_names(&self) -> Vec<&'static str> {
        match (self.variant.is_skew(), self.space.dims()) {
            (true, 1) => vec!["sqrt_rho", "sqrt_rho_u", "sqrt_p"],
            (true, _) => vec!["sqrt_rho", "sqrt_rho_u", "sqrt_rho_v", "sqrt_p"],
            (false, 1) => vec!["rho", "rho_u", "energy"],
            (false, _) => vec!["rho", "rho_u", "rho_v", "energy"],
        }
    }

    fn rhs(&self, t: f64, u: &[f64], du: &mut [f64]) -> Result<(), Fault> {
        let g = self.params.gamma;
        if self.variant.is_skew() {
            rhs_euler_skew(&self.space, g, self.variant, u, du)?;
        } else {
            rhs_euler_conservative(&self.space, g, u, du)?;
        }
        if let Some(f) = &self.forcing {
            add_forcing(&self.space, f, t, du);
        }
        Ok(())
    }

    fn invariants(&self, u: &[f64]) -> Vec<Invariant> {
        euler_diagnostics(&self.space, self.params.gamma, &self.primitive(u))
    }

    fn conservation_rates(&self, u: &[f64], du: &[f64]) -> Vec<Rate> {
        let n = self.space.len();
        let d = self.space.dims();
        let names = ["momentum_x", "momentum_y"];
        if self.variant.is_skew() {
            let r = component(u, n, 0);
            let dr = component(du, n, 0);
            let two_r: Vec<f64> = r.iter().map(|v| 2.0 * v).collect();
            let mut out = vec![rate(&self.space, "mass", &[(&two_r, dr)])];
            for k in 0..d {
                out.push(rate(
                    &self.space,
                    names[k],
                    &[(component(u, n, 1 + k), dr), (r, component(du, n, 1 + k))],
                ));
            }
            out
        } else {
            let one = vec![1.0; n];
            let mut out = vec![rate(&self.space, "mass", &[(&one, component(du, n, 0))])];
            for k in 0..d {
                out.push(rate(
                    &self.space,
                    names[k],
                    &[(&one, component(du, n, 1 + k))],
                ));
            }
            out.push(rate(
                &self.space,
                "total_energy",
                &[(&one, component(du, n, d + 1))],
            ));
            out
        }
    }

    fn entropy_variables(&self, u: &[f64]) -> Option<Vec<f64>> {
        if !self.variant.is_skew() {
            return None;
        }
        let n = self.space.len();
        let d = self.space.dims();
        let k = 2.0 / (self.params.gamma - 1.0);
        let mut out = u.to_vec();
        out[..n].iter_mut().for_each(|v| *v *= 2.0);
        out[(d + 1) * n..].iter_mut().for_each(|v| *v *= k);
        Some(out)
    }

    fn dissipation_form(&self, u: &[f64]) -> Result<f64, Fault> {
        if !self.variant.is_skew() {
            return Ok(0.0);
        }
        euler_dissipation_form(&self.space, self.params.gamma, self.variant, u)
    }

    fn output_fields(&self, u: &[f64]) -> Vec<(&'static str, Vec<f64>)> {
        let prim = self.primitive(u);
        let mut out = vec![("rho", prim.rho)];
        out.extend(["u", "v"].into_iter().zip(prim.vel));
        out.push(("p", prim.p));
        out
    }

    fn random_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let prim = Primitive {
            rho: smooth_random_field(&self.space, rng, 2.0, 1.0),
            vel: (0..self.space.dims())
                .map(|_| smooth_random_field(&self.space, rng, 0.0, 1.0))
                .collect(),
            p: smooth_random_field(&self.space, rng, 2.0, 1.0),
        };
        self.state_from_primitive(&prim)
            .expect("random primitives are positive")
    }
}
