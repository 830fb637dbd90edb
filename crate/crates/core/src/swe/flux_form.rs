use crate::error::{check_positive, Fault};
use crate::flux::{add_upwind, grid_max, lax_friedrichs_gamma};
use crate::model::{component, Variant};
use crate::sbp::{OpKind, Space};

use super::SweParams;

/// Dissipation coefficients per axis and component for a flux-form state.
///
/// Entropy stable: `2 max h/c` for `h`, `4 max h(c − ½√(gh))` for the
/// momentum along the axis and `4 max h√|uv|` for the transverse one, with
/// `c = |u| + √(gh)`. Linearly stable: `max(|u_η| + √(gh))` for every
/// component.
pub fn swe_flux_gammas(
    space: &Space,
    params: &SweParams,
    variant: Variant,
    state: &[f64],
) -> Result<Vec<Vec<f64>>, Fault> {
    let n = space.len();
    let d = space.dims();
    let h = component(state, n, 0);
    check_positive("h", h)?;
    let vel: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            component(state, n, 1 + k)
                .iter()
                .zip(h)
                .map(|(m, h)| m / h)
                .collect()
        })
        .collect();
    let g = params.g;
    let sqrt_gh: Vec<f64> = h.iter().map(|h| (g * h).sqrt()).collect();
    match variant {
        Variant::EntropyConserving => Ok(vec![vec![0.0; 1 + d]; d]),
        Variant::LinearlyStable => (0..d)
            .map(|a| {
                let gamma = lax_friedrichs_gamma(n, |i| vel[a][i].abs() + sqrt_gh[i])?;
                Ok(vec![gamma; 1 + d])
            })
            .collect(),
        Variant::EntropyStable => {
            let c: Vec<f64> = (0..n)
                .map(|i| vel.iter().map(|v| v[i] * v[i]).sum::<f64>().sqrt() + sqrt_gh[i])
                .collect();
            crate::error::check_finite("wave speed", &c)?;
            let g_mass = 2.0 * grid_max(n, |i| h[i] / c[i]);
            let g_normal = 4.0 * grid_max(n, |i| h[i] * (c[i] - 0.5 * sqrt_gh[i]));
            let g_cross = if d == 2 {
                4.0 * grid_max(n, |i| h[i] * (vel[0][i] * vel[1][i]).abs().sqrt())
            } else {
                0.0
            };
            Ok((0..d)
                .map(|a| {
                    let mut row = vec![g_mass];
                    row.extend((0..d).map(|k| if k == a { g_normal } else { g_cross }));
                    row
                })
                .collect())
        }
    }
}

/// Semi-discrete rate of the flux-form equations in 1D or 2D.
///
/// Skew variants use the split momentum terms
/// `½(D_a(m_k u_a) + u_k D_a m_a + m_a D_a u_k)` and the pressure term
/// `g h D_k(h + b)`, with dissipation on the entropy variables
/// `(g(h + b) − ½|u|², u, v)`. The linearly stable variant differentiates the
/// conservative fluxes, writes the pressure term as
/// `½g D(h² − b²) + g(h + b) D b` so that lake-at-rest states are steady,
/// and dissipates `(h + b, hu, hv)`.
pub fn rhs_swe_flux(
    space: &Space,
    params: &SweParams,
    variant: Variant,
    state: &[f64],
    out: &mut [f64],
) -> Result<(), Fault> {
    let n = space.len();
    let d = space.dims();
    let h = component(state, n, 0);
    check_positive("h", h)?;
    for k in 0..d {
        crate::error::check_finite(["hu", "hv"][k], component(state, n, 1 + k))?;
    }
    let gammas = swe_flux_gammas(space, params, variant, state)?;
    let g = params.g;
    let m: Vec<&[f64]> = (0..d).map(|k| component(state, n, 1 + k)).collect();
    let vel: Vec<Vec<f64>> = m
        .iter()
        .map(|mk| mk.iter().zip(h).map(|(a, b)| a / b).collect())
        .collect();
    let eta: Vec<f64> = (0..n).map(|i| h[i] + params.bottom(i)).collect();
    out.fill(0.0);
    let (out_h, out_m) = out.split_at_mut(n);
    let mut out_m: Vec<&mut [f64]> = out_m.chunks_exact_mut(n).collect();

    for a in 0..d {
        let dm_a = space.d(a, OpKind::Central, m[a]);
        for i in 0..n {
            out_h[i] -= dm_a[i];
        }
        for k in 0..d {
            let flux: Vec<f64> = (0..n).map(|i| m[k][i] * vel[a][i]).collect();
            let dflux = space.d(a, OpKind::Central, &flux);
            let o = &mut out_m[k];
            if variant.is_skew() {
                let du_k = space.d(a, OpKind::Central, &vel[k]);
                for i in 0..n {
                    o[i] -= 0.5 * (dflux[i] + vel[k][i] * dm_a[i] + m[a][i] * du_k[i]);
                }
                if k == a {
                    let deta = space.d(a, OpKind::Central, &eta);
                    for i in 0..n {
                        o[i] -= g * h[i] * deta[i];
                    }
                }
            } else {
                for i in 0..n {
                    o[i] -= dflux[i];
                }
                if k == a {
                    match &params.b {
                        None => {
                            let h2: Vec<f64> = h.iter().map(|v| v * v).collect();
                            let dh2 = space.d(a, OpKind::Central, &h2);
                            for i in 0..n {
                                o[i] -= 0.5 * g * dh2[i];
                            }
                        }
                        Some(b) => {
                            let p: Vec<f64> = (0..n).map(|i| h[i] * h[i] - b[i] * b[i]).collect();
                            let dp = space.d(a, OpKind::Central, &p);
                            let db = space.d(a, OpKind::Central, b);
                            for i in 0..n {
                                o[i] -= 0.5 * g * dp[i] + g * eta[i] * db[i];
                            }
                        }
                    }
                }
            }
        }

        let gam = &gammas[a];
        if variant.is_skew() {
            let g1: Vec<f64> = (0..n)
                .map(|i| g * eta[i] - 0.5 * vel.iter().map(|v| v[i] * v[i]).sum::<f64>())
                .collect();
            add_upwind(space, a, gam[0], &g1, out_h);
            for k in 0..d {
                add_upwind(space, a, gam[1 + k], &vel[k], out_m[k]);
            }
        } else {
            add_upwind(space, a, gam[0], &eta, out_h);
            for k in 0..d {
                add_upwind(space, a, gam[1 + k], m[k], out_m[k]);
            }
        }
    }

    if d == 2 && params.f != 0.0 {
        let f = params.f;
        for i in 0..n {
            out_m[0][i] += f * m[1][i];
            out_m[1][i] -= f * m[0][i];
        }
    }
    Ok(())
}
