//! Named test cases: domains, default run settings, initial data, forcing
//! and exact solutions.

use std::f64::consts::PI;

use crate::burgers::{burgers_mms, Burgers};
use crate::error::{Error, Result};
use crate::euler::scenarios as es;
use crate::euler::{primitive_to_conservative, primitive_to_skew, Euler, EulerParams, Primitive};
use crate::grid::Grid1D;
use crate::model::{pointwise, System, Variant};
use crate::sbp::{periodic_pair, Space};
use crate::swe::scenarios as ss;
use crate::swe::{ShallowWater, SweForm, SweParams};

use super::config::{FormKind, ModelKind, RunConfig};

/// Static description of a scenario and its default run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub model: ModelKind,
    pub dims: usize,
    pub x_min: f64,
    pub length: f64,
    pub n: usize,
    /// `Δt = cfl · Δx`; shallow water divides by the initial `max(|u| + √(gh))`.
    pub cfl: f64,
    pub t_final: f64,
    pub stride: usize,
    pub snapshots: &'static [f64],
    pub resolutions: &'static [usize],
    pub has_exact: bool,
}

const fn scenario(
    name: &'static str,
    model: ModelKind,
    dims: usize,
    x_min: f64,
    length: f64,
) -> ScenarioInfo {
    ScenarioInfo {
        name,
        model,
        dims,
        x_min,
        length,
        n: 64,
        cfl: 0.1,
        t_final: 2.0,
        stride: 10,
        snapshots: &[],
        resolutions: &[32, 64, 128, 256],
        has_exact: true,
    }
}

pub const SCENARIOS: &[ScenarioInfo] = &[
    scenario("burgers-mms", ModelKind::Burgers, 1, -1.0, 2.0),
    ScenarioInfo {
        n: 256,
        t_final: 1.0,
        stride: 1,
        snapshots: &[0.0, 0.1, 0.3],
        resolutions: &[256],
        has_exact: false,
        ..scenario("burgers-gaussian", ModelKind::Burgers, 1, 0.0, 1.0)
    },
    scenario("swe-mms-1d", ModelKind::Swe, 1, -1.0, 2.0),
    ScenarioInfo {
        n: 32,
        cfl: 0.15,
        resolutions: &[32, 64, 128],
        ..scenario("swe-mms-2d", ModelKind::Swe, 2, -1.0, 2.0)
    },
    ScenarioInfo {
        t_final: 20.0,
        stride: 100,
        ..scenario("swe-lake-at-rest", ModelKind::Swe, 1, 0.0, ss::LAKE_LENGTH)
    },
    ScenarioInfo {
        n: 128,
        cfl: 0.15,
        t_final: 20.0,
        snapshots: &[0.0, 5.0, 10.0, 15.0, 20.0],
        resolutions: &[128],
        has_exact: false,
        ..scenario("swe-merging-vortices", ModelKind::Swe, 2, 0.0, 2.0 * PI)
    },
    ScenarioInfo {
        n: 256,
        cfl: 0.15,
        t_final: 5e6,
        stride: 100,
        snapshots: &[0.0, 1e6, 2e6, 3e6, 4e6, 5e6],
        resolutions: &[256],
        has_exact: false,
        ..scenario("swe-barotropic-shear", ModelKind::Swe, 2, 0.0, 4e7)
    },
    scenario("euler-mms-1d", ModelKind::Euler, 1, -1.0, 2.0),
    ScenarioInfo {
        t_final: 16.0,
        snapshots: &[0.0, 16.0],
        resolutions: &[32, 64, 96],
        ..scenario("euler-isentropic-vortex", ModelKind::Euler, 2, -8.0, 16.0)
    },
    ScenarioInfo {
        cfl: 0.05,
        t_final: 10.0,
        snapshots: &[0.0, 3.9, 4.8, 5.5, 10.0],
        resolutions: &[64],
        has_exact: false,
        ..scenario("euler-khi", ModelKind::Euler, 2, -1.0, 2.0)
    },
];

pub fn info(name: &str) -> Result<&'static ScenarioInfo> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// Exact solution at time `t` in the state layout of the system.
pub type Exact = Box<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// Everything needed to integrate one configured scenario.
pub struct Setup {
    pub info: &'static ScenarioInfo,
    pub system: Box<dyn System>,
    pub initial: Vec<f64>,
    pub dt: f64,
    pub exact: Option<Exact>,
}

pub fn build_space(cfg: &RunConfig, info: &ScenarioInfo) -> Result<Space> {
    let coeffs = cfg.operator.coefficients()?;
    let grid = Grid1D::new(cfg.n, info.x_min, info.length)?;
    let pair = periodic_pair(&coeffs, &grid)?;
    Ok(match info.dims {
        1 => Space::one(pair),
        _ => Space::two(pair.clone(), pair),
    })
}

pub fn build(cfg: &RunConfig) -> Result<Setup> {
    build_with(cfg, true)
}

/// Like [`build`]; `forced = false` drops manufactured source terms so that
/// the semi-discrete identities can be probed.
pub fn build_with(cfg: &RunConfig, forced: bool) -> Result<Setup> {
    let info = info(&cfg.scenario)?;
    let space = build_space(cfg, info)?;
    let dx = space.dx();
    let (system, initial, exact) = match info.model {
        ModelKind::Burgers => build_burgers(cfg, info, space, forced)?,
        ModelKind::Swe => build_swe(cfg, info, space, forced)?,
        ModelKind::Euler => build_euler(cfg, info, space, forced)?,
    };
    // Shallow water steps are scaled by the initial gravity-wave speed.
    let dt = cfg.cfl * dx / system.wave_speed(&initial).unwrap_or(1.0);
    Ok(Setup {
        info,
        system,
        initial,
        dt,
        exact,
    })
}

type Built = (Box<dyn System>, Vec<f64>, Option<Exact>);

fn build_burgers(
    cfg: &RunConfig,
    info: &ScenarioInfo,
    space: Space,
    forced: bool,
) -> Result<Built> {
    match info.name {
        "burgers-mms" => {
            let mut sys = Burgers::new(space.clone(), cfg.scheme);
            if forced {
                sys = sys.with_mms_forcing();
            }
            let initial = space.sample(|p| burgers_mms(p[0], 0.0).0);
            let exact: Exact = Box::new(move |t| space.sample(|p| burgers_mms(p[0], t).0));
            Ok((Box::new(sys), initial, Some(exact)))
        }
        _ => {
            let initial = space.sample(|p| (-(p[0] - 0.25).powi(2) / 0.01).exp());
            Ok((Box::new(Burgers::new(space, cfg.scheme)), initial, None))
        }
    }
}

fn swe_state(space: &Space, form: SweForm, f: impl Fn(&[f64]) -> [f64; 3]) -> Vec<f64> {
    let d = space.dims();
    let h = space.sample(|p| f(p)[0]);
    let mut out = h.clone();
    for k in 0..d {
        let v = space.sample(|p| f(p)[1 + k]);
        match form {
            SweForm::Flux => out.extend(h.iter().zip(&v).map(|(a, b)| a * b)),
            SweForm::VectorInvariant => out.extend(v),
        }
    }
    out
}

fn build_swe(cfg: &RunConfig, info: &ScenarioInfo, space: Space, forced: bool) -> Result<Built> {
    let form = match cfg.form {
        FormKind::Flux => SweForm::Flux,
        FormKind::VectorInvariant => SweForm::VectorInvariant,
    };
    let dims = info.dims;
    match info.name {
        "swe-mms-1d" | "swe-mms-2d" => {
            let g = cfg.g.unwrap_or(9.81);
            let jet = move |x: &[f64], t: f64| {
                if dims == 1 {
                    ss::mms_1d(x[0], t)
                } else {
                    ss::mms_2d(x[0], x[1], t)
                }
            };
            let forcing = ss::mms_forcing(form, g);
            let mut sys = ShallowWater::new(space.clone(), SweParams::new(g), cfg.scheme, form)?;
            if forced {
                sys = sys.with_forcing(forcing);
            }
            let at = move |t: f64| {
                swe_state(&space, form, |p| {
                    let j = jet(p, t);
                    [j.h.v, j.u.v, j.v.v]
                })
            };
            let initial = at(0.0);
            Ok((Box::new(sys), initial, Some(Box::new(at))))
        }
        "swe-lake-at-rest" => {
            let g = cfg.g.unwrap_or(9.81);
            let b = space.sample(|p| ss::lake_bottom(p[0]));
            let initial = swe_state(&space, form, |p| [ss::lake_at_rest(p[0]).0, 0.0, 0.0]);
            let sys = ShallowWater::new(
                space,
                SweParams::new(g).with_topography(b),
                cfg.scheme,
                form,
            )?;
            let steady = initial.clone();
            Ok((
                Box::new(sys),
                initial,
                Some(Box::new(move |_| steady.clone())),
            ))
        }
        "swe-merging-vortices" => {
            let mut mv = ss::MergingVortices::default();
            mv.g = cfg.g.unwrap_or(mv.g);
            mv.f = cfg.f.unwrap_or(mv.f);
            let initial = swe_state(&space, form, |p| {
                let (h, u, v) = mv.initial(p[0], p[1]);
                [h, u, v]
            });
            let params = SweParams::new(mv.g).with_coriolis(mv.f);
            Ok((
                Box::new(ShallowWater::new(space, params, cfg.scheme, form)?),
                initial,
                None,
            ))
        }
        _ => {
            let mut bs = ss::BarotropicShear::default();
            bs.g = cfg.g.unwrap_or(bs.g);
            bs.f = cfg.f.unwrap_or(bs.f);
            let initial = swe_state(&space, form, |p| {
                let (h, u, v) = bs.initial(p[0], p[1]);
                [h, u, v]
            });
            let params = SweParams::new(bs.g).with_coriolis(bs.f);
            Ok((
                Box::new(ShallowWater::new(space, params, cfg.scheme, form)?),
                initial,
                None,
            ))
        }
    }
}

fn euler_state(
    space: &Space,
    gamma: f64,
    skew: bool,
    f: impl Fn(&[f64]) -> [f64; 4],
) -> Result<Vec<f64>> {
    let d = space.dims();
    let prim = Primitive {
        rho: space.sample(|p| f(p)[0]),
        vel: (0..d).map(|k| space.sample(|p| f(p)[1 + k])).collect(),
        p: space.sample(|p| f(p)[3]),
    };
    if skew {
        Ok(primitive_to_skew(&prim)?)
    } else {
        Ok(primitive_to_conservative(&prim, gamma))
    }
}

fn build_euler(cfg: &RunConfig, info: &ScenarioInfo, space: Space, forced: bool) -> Result<Built> {
    let params = EulerParams::new(cfg.gamma.unwrap_or(1.4))?;
    let gamma = params.gamma;
    let skew = cfg.scheme.is_skew();
    let sys = Euler::new(space.clone(), params, cfg.scheme);
    match info.name {
        "euler-mms-1d" => {
            let forcing = pointwise(move |t: f64, x: &[f64], out: &mut [f64]| {
                let j = es::mms_1d(x[0], t);
                let s = if skew {
                    es::skew_forcing(&j, gamma, 1)
                } else {
                    es::conservative_forcing(&j, gamma, 1)
                };
                out.copy_from_slice(&s);
            });
            let at = move |t: f64| {
                euler_state(&space, gamma, skew, |p| {
                    let j = es::mms_1d(p[0], t);
                    [j.rho.v, j.u.v, 0.0, j.p.v]
                })
                .expect("manufactured density and pressure are positive")
            };
            let initial = at(0.0);
            let sys = if forced {
                sys.with_forcing(forcing)
            } else {
                sys
            };
            Ok((Box::new(sys), initial, Some(Box::new(at))))
        }
        "euler-isentropic-vortex" => {
            let vortex = es::IsentropicVortex {
                gamma,
                ..Default::default()
            };
            let at = move |t: f64| {
                euler_state(&space, gamma, skew, |p| vortex.primitive(p[0], p[1], t))
                    .expect("vortex density and pressure are positive")
            };
            let initial = at(0.0);
            Ok((Box::new(sys), initial, Some(Box::new(at))))
        }
        _ => {
            let initial = euler_state(&space, gamma, skew, |p| es::kelvin_helmholtz(p[0], p[1]))?;
            Ok((Box::new(sys), initial, None))
        }
    }
}

/// Whether a scheme is supported for a scenario with the given form.
pub fn supports(info: &ScenarioInfo, form: FormKind, scheme: Variant) -> bool {
    !(info.model == ModelKind::Swe
        && form == FormKind::VectorInvariant
        && scheme != Variant::EntropyConserving)
}
