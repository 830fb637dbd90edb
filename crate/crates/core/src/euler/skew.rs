use crate::error::{check_finite, check_positive, Fault};
use crate::flux::grid_max;
use crate::model::{component, Variant};
use crate::sbp::{OpKind, Space};

/// `γ_{η1..3}` for every axis: `¼ max √ρ λ`, `½ max ρ λ` and `½ max λ` with
/// `λ = |u_η| + √(γp/ρ)`. Zero for the entropy conserving variant.
pub fn euler_skew_gammas(
    space: &Space,
    gamma: f64,
    variant: Variant,
    state: &[f64],
) -> Result<Vec<[f64; 3]>, Fault> {
    let n = space.len();
    let d = space.dims();
    if variant == Variant::EntropyConserving {
        return Ok(vec![[0.0; 3]; d]);
    }
    let r = component(state, n, 0);
    let q = component(state, n, d + 1);
    let c: Vec<f64> = (0..n)
        .map(|i| (gamma * q[i] * q[i]).sqrt() / r[i])
        .collect();
    check_finite("sound speed", &c)?;
    Ok((0..d)
        .map(|a| {
            let m = component(state, n, 1 + a);
            let lam = |i: usize| (m[i] / r[i]).abs() + c[i];
            [
                0.25 * grid_max(n, |i| r[i] * lam(i)),
                0.5 * grid_max(n, |i| r[i] * r[i] * lam(i)),
                0.5 * grid_max(n, lam),
            ]
        })
        .collect())
}

/// Upwind difference `𝒟 = ½(D₊ − D₋)`, negative semi-definite in `H`.
pub(crate) fn half_upwind(space: &Space, axis: usize, f: &[f64]) -> Vec<f64> {
    let mut d = space.d(axis, OpKind::Upwind, f);
    d.iter_mut().for_each(|v| *v *= 0.5);
    d
}

/// Skew-symmetric rate for `(r, m[, w], q) = (√ρ, √ρu[, √ρv], √p)`:
///
/// `ṙ = −½(u·∇r + ∇·(u r))`,
/// `ṁ_k = −½(u·∇m_k + ∇·(u m_k)) − 2(q/r)∂_k q`,
/// `q̇ = −½(γ∇·(u q) + (2 − γ)u·∇q)`,
///
/// plus `Σ_η S_η`.
pub fn rhs_euler_skew(
    space: &Space,
    gamma: f64,
    variant: Variant,
    state: &[f64],
    out: &mut [f64],
) -> Result<(), Fault> {
    let n = space.len();
    let d = space.dims();
    let r = component(state, n, 0);
    let q = component(state, n, d + 1);
    check_positive("sqrt(rho)", r)?;
    check_positive("sqrt(p)", q)?;
    for k in 0..d {
        check_finite(["m", "w"][k], component(state, n, 1 + k))?;
    }
    let gammas = euler_skew_gammas(space, gamma, variant, state)?;
    let m: Vec<&[f64]> = (0..d).map(|k| component(state, n, 1 + k)).collect();
    let vel: Vec<Vec<f64>> = m
        .iter()
        .map(|mk| mk.iter().zip(r).map(|(a, b)| a / b).collect())
        .collect();

    out.fill(0.0);
    let mut parts: Vec<&mut [f64]> = out.chunks_exact_mut(n).collect();

    // Transported fields: r, the momenta, then q.
    for a in 0..d {
        let ua = &vel[a];
        let fields: Vec<&[f64]> = std::iter::once(r)
            .chain(m.iter().copied())
            .chain(std::iter::once(q))
            .collect();
        for (c, f) in fields.iter().enumerate() {
            let df = space.d(a, OpKind::Central, f);
            let uf: Vec<f64> = f.iter().zip(ua).map(|(x, y)| x * y).collect();
            let duf = space.d(a, OpKind::Central, &uf);
            let o = &mut parts[c];
            if c == d + 1 {
                for i in 0..n {
                    o[i] -= 0.5 * (gamma * duf[i] + (2.0 - gamma) * ua[i] * df[i]);
                }
            } else {
                for i in 0..n {
                    o[i] -= 0.5 * (ua[i] * df[i] + duf[i]);
                }
            }
            if c == d + 1 {
                let o = &mut parts[1 + a];
                for i in 0..n {
                    o[i] -= 2.0 * q[i] / r[i] * df[i];
                }
            }
        }

        let [g1, g2, g3] = gammas[a];
        if g1 == 0.0 && g2 == 0.0 && g3 == 0.0 {
            continue;
        }
        let dr = half_upwind(space, a, r);
        for i in 0..n {
            parts[0][i] += g1 / r[i] * dr[i];
        }
        for k in 0..d {
            let dm = half_upwind(space, a, m[k]);
            let du = half_upwind(space, a, &vel[k]);
            let o = &mut parts[1 + k];
            for i in 0..n {
                o[i] += g1 / r[i] * dm[i] + (g2 / r[i] - g1) * du[i];
            }
        }
        let dq = half_upwind(space, a, q);
        for i in 0..n {
            parts[d + 1][i] += g3 * dq[i];
        }
    }
    Ok(())
}

/// `Σ_η [γ_{η2} Σ_k⟨u_k, 𝒟_η u_k⟩ + 2γ_{η3}/(γ − 1)⟨q, 𝒟_η q⟩]`, the rate at
/// which `S_η` changes the total entropy.
pub fn euler_dissipation_form(
    space: &Space,
    gamma: f64,
    variant: Variant,
    state: &[f64],
) -> Result<f64, Fault> {
    let n = space.len();
    let d = space.dims();
    let gammas = euler_skew_gammas(space, gamma, variant, state)?;
    let r = component(state, n, 0);
    let q = component(state, n, d + 1);
    let vel: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            component(state, n, 1 + k)
                .iter()
                .zip(r)
                .map(|(a, b)| a / b)
                .collect()
        })
        .collect();
    let mut total = 0.0;
    for (a, [_, g2, g3]) in gammas.into_iter().enumerate() {
        if g2 != 0.0 {
            for v in &vel {
                total += g2 * space.inner(v, &half_upwind(space, a, v));
            }
        }
        if g3 != 0.0 {
            total += 2.0 * g3 / (gamma - 1.0) * space.inner(q, &half_upwind(space, a, q));
        }
    }
    Ok(total)
}
