//! Nonlinear shallow water equations: flux form with optional topography and
//! rotation, and the vector-invariant form.

mod flux_form;
pub mod scenarios;
mod vecinv;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Fault};
use crate::model::{
    component, rate, smooth_random_field, Forcing, Invariant, Rate, System, Variant,
};
use crate::sbp::{OpKind, Space};

pub use flux_form::{rhs_swe_flux, swe_flux_gammas};
pub use vecinv::rhs_swe_vecinv;

#[derive(Debug, Clone, PartialEq)]
pub struct SweParams {
    /// Gravitational acceleration.
    pub g: f64,
    /// Coriolis parameter (2D only).
    pub f: f64,
    /// Bottom topography at the nodes; `None` is a flat bottom.
    pub b: Option<Vec<f64>>,
}

impl SweParams {
    pub fn new(g: f64) -> Self {
        Self { g, f: 0.0, b: None }
    }

    pub fn with_coriolis(mut self, f: f64) -> Self {
        self.f = f;
        self
    }

    pub fn with_topography(mut self, b: Vec<f64>) -> Self {
        self.b = Some(b);
        self
    }

    pub(crate) fn bottom(&self, i: usize) -> f64 {
        self.b.as_ref().map_or(0.0, |b| b[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweForm {
    /// State `(h, hu[, hv])`.
    Flux,
    /// State `(h, u[, v])`.
    VectorInvariant,
}

pub struct ShallowWater {
    space: Space,
    params: SweParams,
    variant: Variant,
    form: SweForm,
    forcing: Option<Forcing>,
}

impl ShallowWater {
    pub fn new(
        space: Space,
        params: SweParams,
        variant: Variant,
        form: SweForm,
    ) -> Result<Self, Error> {
        if !(params.g > 0.0) {
            return Err(Error::Config(format!(
                "gravity must be positive, got {}",
                params.g
            )));
        }
        if form == SweForm::VectorInvariant && variant != Variant::EntropyConserving {
            return Err(Error::Config(
                "the vector-invariant form is available as entropy_conserving only".into(),
            ));
        }
        if let Some(b) = &params.b {
            if b.len() != space.len() {
                return Err(Error::SizeMismatch {
                    expected: space.len(),
                    got: b.len(),
                });
            }
        }
        Ok(Self {
            space,
            params,
            variant,
            form,
            forcing: None,
        })
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn params(&self) -> &SweParams {
        &self.params
    }

    pub fn form(&self) -> SweForm {
        self.form
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Converts `(h, u[, v])` to this form's state layout.
    pub fn state_from_primitive(&self, h: &[f64], vel: &[Vec<f64>]) -> Vec<f64> {
        let mut out = h.to_vec();
        for v in vel {
            match self.form {
                SweForm::Flux => out.extend(h.iter().zip(v).map(|(a, b)| a * b)),
                SweForm::VectorInvariant => out.extend_from_slice(v),
            }
        }
        out
    }

    /// `(h, [u, v])` from a state.
    pub fn primitive(&self, u: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.space.len();
        let h = component(u, n, 0).to_vec();
        let vel = (0..self.space.dims())
            .map(|k| {
                let c = component(u, n, 1 + k);
                match self.form {
                    SweForm::Flux => c.iter().zip(&h).map(|(m, h)| m / h).collect(),
                    SweForm::VectorInvariant => c.to_vec(),
                }
            })
            .collect();
        (h, vel)
    }

    /// Absolute vorticity `D_x v − D_y u + f` with central operators (2D).
    pub fn vorticity(&self, vel: &[Vec<f64>]) -> Vec<f64> {
        let dv = self.space.d(0, OpKind::Central, &vel[1]);
        let du = self.space.d(1, OpKind::Central, &vel[0]);
        dv.iter()
            .zip(&du)
            .map(|(a, b)| a - b + self.params.f)
            .collect()
    }
}

/// Invariant record for a shallow water state given as `(h, velocity)`.
pub fn swe_diagnostics(
    space: &Space,
    params: &SweParams,
    h: &[f64],
    vel: &[Vec<f64>],
) -> Vec<Invariant> {
    let n = space.len();
    let g = params.g;
    let e: Vec<f64> = (0..n)
        .map(|i| {
            let speed2: f64 = vel.iter().map(|v| v[i] * v[i]).sum();
            0.5 * (g * h[i] * h[i] + h[i] * speed2) + g * h[i] * params.bottom(i)
        })
        .collect();
    let energy = space.integral(&e);
    let mass = space.integral(h);
    let mut out = vec![
        Invariant {
            name: "entropy",
            value: energy,
            scale: energy.abs(),
        },
        Invariant {
            name: "mass",
            value: mass,
            scale: mass.abs(),
        },
    ];
    for (k, v) in vel.iter().enumerate() {
        let m: Vec<f64> = h.iter().zip(v).map(|(a, b)| a * b).collect();
        out.push(Invariant {
            name: ["momentum_x", "momentum_y"][k],
            value: space.integral(&m),
            scale: space.abs_integral(&m),
        });
    }
    if space.dims() == 2 {
        let dv = space.d(0, OpKind::Central, &vel[1]);
        let du = space.d(1, OpKind::Central, &vel[0]);
        let w: Vec<f64> = dv.iter().zip(&du).map(|(a, b)| a - b + params.f).collect();
        let z: Vec<f64> = w.iter().zip(h).map(|(w, h)| w * w / h).collect();
        let wtot = space.integral(&w);
        let ztot = space.integral(&z);
        out.push(Invariant {
            name: "absolute_vorticity",
            value: wtot,
            scale: space.abs_integral(&w),
        });
        out.push(Invariant {
            name: "enstrophy",
            value: ztot,
            scale: ztot.abs(),
        });
    }
    out
}

impl System for ShallowWater {
    fn name(&self) -> &str {
        match self.form {
            SweForm::Flux => "swe",
            SweForm::VectorInvariant => "swe-vector-invariant",
        }
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn component_names(&self) -> Vec<&'static str> {
        match (self.form, self.space.dims()) {
            (SweForm::Flux, 1) => vec!["h", "hu"],
            (SweForm::Flux, _) => vec!["h", "hu", "hv"],
            (SweForm::VectorInvariant, 1) => vec!["h", "u"],
            (SweForm::VectorInvariant, _) => vec!["h", "u", "v"],
        }
    }

    fn rhs(&self, t: f64, u: &[f64], du: &mut [f64]) -> Result<(), Fault> {
        match self.form {
            SweForm::Flux => rhs_swe_flux(&self.space, &self.params, self.variant, u, du)?,
            SweForm::VectorInvariant => rhs_swe_vecinv(&self.space, &self.params, u, du)?,
        }
        if let Some(f) = &self.forcing {
            f(t, &self.space, du);
        }
        Ok(())
    }

    fn invariants(&self, u: &[f64]) -> Vec<Invariant> {
        let (h, vel) = self.primitive(u);
        swe_diagnostics(&self.space, &self.params, &h, &vel)
    }

    fn conservation_rates(&self, _u: &[f64], du: &[f64]) -> Vec<Rate> {
        let n = self.space.len();
        let one = vec![1.0; n];
        let mut out = vec![rate(&self.space, "mass", &[(&one, component(du, n, 0))])];
        let momentum_conserved =
            self.form == SweForm::Flux && self.params.b.is_none() && self.params.f == 0.0;
        if momentum_conserved {
            for k in 0..self.space.dims() {
                out.push(rate(
                    &self.space,
                    ["momentum_x", "momentum_y"][k],
                    &[(&one, component(du, n, 1 + k))],
                ));
            }
        }
        out
    }

    fn entropy_variables(&self, u: &[f64]) -> Option<Vec<f64>> {
        if !self.variant.is_skew() {
            return None;
        }
        let n = self.space.len();
        let (h, vel) = self.primitive(u);
        let g = self.params.g;
        let speed2 = |i: usize| vel.iter().map(|v| v[i] * v[i]).sum::<f64>();
        let mut out: Vec<f64>;
        match self.form {
            SweForm::Flux => {
                out = (0..n)
                    .map(|i| g * (h[i] + self.params.bottom(i)) - 0.5 * speed2(i))
                    .collect();
                vel.iter().for_each(|v| out.extend_from_slice(v));
            }
            SweForm::VectorInvariant => {
                out = (0..n)
                    .map(|i| 0.5 * speed2(i) + g * (h[i] + self.params.bottom(i)))
                    .collect();
                for v in &vel {
                    out.extend(h.iter().zip(v).map(|(a, b)| a * b));
                }
            }
        }
        Some(out)
    }

    fn dissipation_form(&self, u: &[f64]) -> Result<f64, Fault> {
        if self.form == SweForm::VectorInvariant || self.variant == Variant::EntropyConserving {
            return Ok(0.0);
        }
        let n = self.space.len();
        let gammas = swe_flux_gammas(&self.space, &self.params, self.variant, u)?;
        let vars: Vec<Vec<f64>> = match self.entropy_variables(u) {
            Some(g) => g.chunks(n).map(<[f64]>::to_vec).collect(),
            None => return Ok(0.0),
        };
        let mut total = 0.0;
        for (axis, gs) in gammas.iter().enumerate() {
            let spec = crate::flux::SplitSpec::new(gs.clone());
            total += crate::flux::dissipation_form(&self.space, axis, &spec, &vars);
        }
        Ok(total)
    }

    fn wave_speed(&self, u: &[f64]) -> Option<f64> {
        let (h, vel) = self.primitive(u);
        let g = self.params.g;
        Some(h.iter().enumerate().fold(0.0f64, |m, (i, h)| {
            let speed = vel.iter().map(|v| v[i] * v[i]).sum::<f64>().sqrt();
            m.max(speed + (g * h).sqrt())
        }))
    }

    fn output_fields(&self, u: &[f64]) -> Vec<(&'static str, Vec<f64>)> {
        let (h, vel) = self.primitive(u);
        let w = (self.space.dims() == 2).then(|| self.vorticity(&vel));
        let mut out = vec![("h", h)];
        out.extend(["u", "v"].into_iter().zip(vel));
        out.extend(w.map(|w| ("vorticity", w)));
        out
    }

    fn random_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let h = smooth_random_field(&self.space, rng, 2.0, 1.0);
        let vel: Vec<Vec<f64>> = (0..self.space.dims())
            .map(|_| smooth_random_field(&self.space, rng, 0.0, 1.0))
            .collect();
        self.state_from_primitive(&h, &vel)
    }
}
