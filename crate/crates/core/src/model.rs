//! Interface shared by the semi-discrete models.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Fault};
use crate::sbp::Space;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    EntropyStable,
    EntropyConserving,
    LinearlyStable,
}

impl Variant {
    pub const ALL: [Variant; 3] = [
        Variant::EntropyStable,
        Variant::EntropyConserving,
        Variant::LinearlyStable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::EntropyStable => "entropy_stable",
            Variant::EntropyConserving => "entropy_conserving",
            Variant::LinearlyStable => "linearly_stable",
        }
    }

    /// Whether the variant uses the skew-symmetric split form.
    pub fn is_skew(self) -> bool {
        !matches!(self, Variant::LinearlyStable)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "entropy_stable" | "es" => Ok(Variant::EntropyStable),
            "entropy_conserving" | "ec" => Ok(Variant::EntropyConserving),
            "linearly_stable" | "ls" => Ok(Variant::LinearlyStable),
            other => Err(Error::Config(format!(
                "unknown scheme variant `{other}` (expected entropy_stable, entropy_conserving or linearly_stable)"
            ))),
        }
    }
}

/// Source term added to a full rate vector at time `t`.
pub type Forcing = Arc<dyn Fn(f64, &Space, &mut [f64]) + Send + Sync>;

/// Wraps a pointwise source `s(t, x, out)` that writes one value per
/// component.
pub fn pointwise(f: impl Fn(f64, &[f64], &mut [f64]) + Send + Sync + 'static) -> Forcing {
    Arc::new(move |t, space: &Space, du: &mut [f64]| add_pointwise(space, &f, t, du))
}

/// A named integral quantity with the magnitude used to normalize its drift.
#[derive(Debug, Clone, PartialEq)]
pub struct Invariant {
    pub name: &'static str,
    pub value: f64,
    pub scale: f64,
}

/// Rate of change of a conserved integral, with the magnitude of the terms
/// that cancel in it.
#[derive(Debug, Clone, PartialEq)]
pub struct Rate {
    pub name: &'static str,
    pub value: f64,
    pub scale: f64,
}

/// A semi-discretization `du/dt = L(t, u)` on a periodic space. States are
/// flat vectors holding the components one after another.
pub trait System: Send + Sync {
    fn name(&self) -> &str;
    fn space(&self) -> &Space;
    fn component_names(&self) -> Vec<&'static str>;
    fn rhs(&self, t: f64, u: &[f64], du: &mut [f64]) -> Result<(), Fault>;
    fn invariants(&self, u: &[f64]) -> Vec<Invariant>;

    /// Rates of the discretely conserved integrals given a state and its
    /// unforced rate.
    fn conservation_rates(&self, u: &[f64], du: &[f64]) -> Vec<Rate>;

    /// Entropy variables in the state layout; `None` when the variant has
    /// no entropy estimate.
    fn entropy_variables(&self, u: &[f64]) -> Option<Vec<f64>>;

    /// Entropy production of the dissipation term, evaluated from its
    /// quadratic form.
    fn dissipation_form(&self, u: &[f64]) -> Result<f64, Fault>;

    /// Smooth random state away from positivity limits.
    fn random_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;

    /// Largest characteristic speed of `u`, when the model's time step should
    /// scale with it.
    fn wave_speed(&self, _u: &[f64]) -> Option<f64> {
        None
    }

    /// Named physical fields written to snapshots; the state components by
    /// default.
    fn output_fields(&self, u: &[f64]) -> Vec<(&'static str, Vec<f64>)> {
        let n = self.space().len();
        self.component_names()
            .into_iter()
            .enumerate()
            .map(|(c, name)| (name, component(u, n, c).to_vec()))
            .collect()
    }

    fn components(&self) -> usize {
        self.component_names().len()
    }

    fn len(&self) -> usize {
        self.components() * self.space().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn add_pointwise(space: &Space, forcing: &dyn Fn(f64, &[f64], &mut [f64]), t: f64, du: &mut [f64]) {
    let n = space.len();
    let comps = du.len() / n;
    let mut buf = vec![0.0; comps];
    let mut point = [0.0; 2];
    match space.grid() {
        crate::grid::Grid::One(g) => {
            for i in 0..n {
                point[0] = g.x(i);
                forcing(t, &point[..1], &mut buf);
                for c in 0..comps {
                    du[c * n + i] += buf[c];
                }
            }
        }
        crate::grid::Grid::Two(g) => {
            for k in 0..n {
                let (ix, iy) = g.coords(k);
                point = [g.gx.x(ix), g.gy.x(iy)];
                forcing(t, &point, &mut buf);
                for c in 0..comps {
                    du[c * n + k] += buf[c];
                }
            }
        }
    }
}

pub(crate) fn add_forcing(space: &Space, forcing: &Forcing, t: f64, du: &mut [f64]) {
    forcing(t, space, du);
}

pub(crate) fn rate(space: &Space, name: &'static str, terms: &[(&[f64], &[f64])]) -> Rate {
    let mut value = 0.0;
    let mut scale = 0.0;
    for (a, b) in terms {
        value += space.inner(a, b);
        scale += space
            .weights()
            .iter()
            .zip(a.iter().zip(b.iter()))
            .fold(0.0, |acc, (h, (x, y))| acc + h * (x * y).abs());
    }
    Rate { name, value, scale }
}

pub(crate) fn component(u: &[f64], n: usize, c: usize) -> &[f64] {
    &u[c * n..(c + 1) * n]
}

/// Sum of a few random Fourier modes per axis, `mean ± amplitude` at most.
pub fn smooth_random_field(
    space: &Space,
    rng: &mut ChaCha8Rng,
    mean: f64,
    amplitude: f64,
) -> Vec<f64> {
    use rand::Rng;
    const MODES: usize = 3;
    let dims = space.dims();
    let extents: Vec<(f64, f64)> = (0..dims)
        .map(|a| {
            let g = space.pair(a).grid();
            (g.x_min(), g.length())
        })
        .collect();
    let terms: Vec<(usize, usize, f64, f64)> = (0..dims)
        .flat_map(|a| (1..=MODES).map(move |k| (a, k)))
        .map(|(a, k)| {
            (
                a,
                k,
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let total: f64 = terms
        .iter()
        .map(|t| t.2.abs())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    space.sample(|p| {
        let s: f64 = terms
            .iter()
            .map(|&(a, k, c, phase)| {
                let (x0, len) = extents[a];
                c * (std::f64::consts::TAU * k as f64 * (p[a] - x0) / len + phase).sin()
            })
            .sum();
        mean + amplitude * s / total
    })
}
