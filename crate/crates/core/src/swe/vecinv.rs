use crate::error::{check_finite, check_positive, Fault};
use crate::model::component;
use crate::sbp::{OpKind, Space};

use super::SweParams;

/// Rate of the vector-invariant equations for the state `(h, u[, v])`:
/// `ḣ = −∇·(h u)`, `u̇ = ω v − D_x G`, `v̇ = −ω u − D_y G` with
/// `ω = D_x v − D_y u + f` and `G = ½|u|² + g(h + b)`. No dissipation.
pub fn rhs_swe_vecinv(
    space: &Space,
    params: &SweParams,
    state: &[f64],
    out: &mut [f64],
) -> Result<(), Fault> {
    let n = space.len();
    let d = space.dims();
    let h = component(state, n, 0);
    check_positive("h", h)?;
    let vel: Vec<&[f64]> = (0..d).map(|k| component(state, n, 1 + k)).collect();
    for (k, v) in vel.iter().enumerate() {
        check_finite(["u", "v"][k], v)?;
    }
    let big_g: Vec<f64> = (0..n)
        .map(|i| {
            0.5 * vel.iter().map(|v| v[i] * v[i]).sum::<f64>()
                + params.g * (h[i] + params.bottom(i))
        })
        .collect();
    out.fill(0.0);
    let (out_h, rest) = out.split_at_mut(n);
    let mut out_v: Vec<&mut [f64]> = rest.chunks_exact_mut(n).collect();
    for a in 0..d {
        let flux: Vec<f64> = (0..n).map(|i| h[i] * vel[a][i]).collect();
        let df = space.d(a, OpKind::Central, &flux);
        let dg = space.d(a, OpKind::Central, &big_g);
        for i in 0..n {
            out_h[i] -= df[i];
            out_v[a][i] -= dg[i];
        }
    }
    if d == 2 {
        let dv = space.d(0, OpKind::Central, vel[1]);
        let du = space.d(1, OpKind::Central, vel[0]);
        for i in 0..n {
            let w = dv[i] - du[i] + params.f;
            out_v[0][i] += w * vel[1][i];
            out_v[1][i] -= w * vel[0][i];
        }
    }
    Ok(())
}
