use crate::error::{check_finite, check_positive, Fault};
use crate::flux::{add_upwind, lax_friedrichs_gamma};
use crate::model::component;
use crate::sbp::{OpKind, Space};

/// Conservative rate for `(ρ, ρu[, ρv], E)` with global Lax–Friedrichs
/// splitting: `−Σ_η D_η f_η(U) + ½γ_η(D₊ − D₋)U`, `γ_η = max(|u_η| + c)`.
pub fn rhs_euler_conservative(
    space: &Space,
    gamma: f64,
    state: &[f64],
    out: &mut [f64],
) -> Result<(), Fault> {
    let n = space.len();
    let d = space.dims();
    let rho = component(state, n, 0);
    let e = component(state, n, d + 1);
    check_positive("rho", rho)?;
    check_finite("E", e)?;
    let mom: Vec<&[f64]> = (0..d).map(|k| component(state, n, 1 + k)).collect();
    for (k, m) in mom.iter().enumerate() {
        check_finite(["rho*u", "rho*v"][k], m)?;
    }
    let vel: Vec<Vec<f64>> = mom
        .iter()
        .map(|m| m.iter().zip(rho).map(|(a, b)| a / b).collect())
        .collect();
    let p: Vec<f64> = (0..n)
        .map(|i| {
            let ke: f64 = vel.iter().map(|v| v[i] * v[i]).sum::<f64>() * 0.5 * rho[i];
            (gamma - 1.0) * (e[i] - ke)
        })
        .collect();
    check_positive("p", &p)?;
    let c: Vec<f64> = (0..n).map(|i| (gamma * p[i] / rho[i]).sqrt()).collect();

    out.fill(0.0);
    let mut parts: Vec<&mut [f64]> = out.chunks_exact_mut(n).collect();
    let mut flux = vec![0.0; n];
    for a in 0..d {
        let ua = &vel[a];
        for c_idx in 0..d + 2 {
            for i in 0..n {
                flux[i] = match c_idx {
                    0 => mom[a][i],
                    k if k == d + 1 => (e[i] + p[i]) * ua[i],
                    k => mom[k - 1][i] * ua[i] + if k - 1 == a { p[i] } else { 0.0 },
                };
            }
            let df = space.d(a, OpKind::Central, &flux);
            for (o, v) in parts[c_idx].iter_mut().zip(&df) {
                *o -= v;
            }
        }
        let g = lax_friedrichs_gamma(n, |i| ua[i].abs() + c[i])?;
        for c_idx in 0..d + 2 {
            add_upwind(space, a, g, component(state, n, c_idx), parts[c_idx]);
        }
    }
    Ok(())
}
