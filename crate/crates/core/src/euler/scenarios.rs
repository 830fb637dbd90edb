//! Initial data, exact solutions and manufactured forcing for the
//! compressible Euler test cases.

use std::f64::consts::PI;

use crate::jet::Jet;

/// Values and first derivatives of the primitive variables at a point.
#[derive(Debug, Clone, Copy)]
pub struct EulerJet {
    pub rho: Jet,
    pub u: Jet,
    pub v: Jet,
    pub p: Jet,
}

/// Forcing `U_t + F(U)` for the square-root variables, `dims + 2` entries.
pub fn skew_forcing(j: &EulerJet, gamma: f64, dims: usize) -> Vec<f64> {
    let EulerJet { rho, u, v, p } = *j;
    let r = rho.sqrt();
    let q = p.sqrt();
    let vel = [u, v];
    let div = u.x + if dims == 2 { v.y } else { 0.0 };
    let adv = |f: Jet| (0..dims).map(|a| vel[a].v * f.d(a)).sum::<f64>();
    let mut out = vec![r.t + adv(r) + 0.5 * r.v * div];
    for k in 0..dims {
        let m = r * vel[k];
        out.push(m.t + adv(m) + 0.5 * m.v * div + 2.0 * q.v / r.v * q.d(k));
    }
    out.push(q.t + adv(q) + 0.5 * gamma * q.v * div);
    out
}

/// Forcing `U_t + ∇·f(U)` for `(ρ, ρu[, ρv], E)`.
pub fn conservative_forcing(j: &EulerJet, gamma: f64, dims: usize) -> Vec<f64> {
    let EulerJet { rho, u, v, p } = *j;
    let vel = [u, v];
    let ke = (0..dims).fold(Jet::constant(0.0), |acc, k| acc + vel[k] * vel[k]);
    let e = p * (1.0 / (gamma - 1.0)) + 0.5 * rho * ke;
    let div = |f: &dyn Fn(usize) -> Jet| (0..dims).map(|a| f(a).d(a)).sum::<f64>();
    let mut out = vec![rho.t + div(&|a| rho * vel[a])];
    for k in 0..dims {
        let m = rho * vel[k];
        out.push(m.t + div(&|a| m * vel[a] + if a == k { p } else { Jet::constant(0.0) }));
    }
    out.push(e.t + div(&|a| (e + p) * vel[a]));
    out
}

/// `ρ = 2 + 0.3 sin(2π(x − t))`, `u = 1`, `p = 2 + 0.3 sin(2π(x + t))`.
pub fn mms_1d(x: f64, t: f64) -> EulerJet {
    let k = 0.6 * PI;
    let (sa, ca) = (2.0 * PI * (x - t)).sin_cos();
    let (sb, cb) = (2.0 * PI * (x + t)).sin_cos();
    EulerJet {
        rho: Jet::new(2.0 + 0.3 * sa, -k * ca, k * ca, 0.0),
        u: Jet::constant(1.0),
        v: Jet::constant(0.0),
        p: Jet::new(2.0 + 0.3 * sb, k * cb, k * cb, 0.0),
    }
}

/// Vortex advected by a uniform background flow on a periodic square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsentropicVortex {
    pub strength: f64,
    pub gamma: f64,
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
    pub half_width: f64,
}

impl Default for IsentropicVortex {
    fn default() -> Self {
        Self {
            strength: 10.0,
            gamma: 1.4,
            rho: 1.0,
            u: 1.0,
            v: 1.0,
            p: 10.0,
            half_width: 8.0,
        }
    }
}

impl IsentropicVortex {
    /// Exact `(ρ, u, v, p)` at time `t`: the initial profile translated by
    /// the background velocity.
    pub fn primitive(&self, x: f64, y: f64, t: f64) -> [f64; 4] {
        let period = 2.0 * self.half_width;
        let wrap = |s: f64| (s + self.half_width).rem_euclid(period) - self.half_width;
        let (x, y) = (wrap(x - self.u * t), wrap(y - self.v * t));
        let r2 = x * x + y * y;
        let t_bar = self.p / self.rho;
        let eps = self.strength;
        let g = self.gamma;
        let temp = t_bar - (g - 1.0) * eps * eps / (8.0 * g * PI * PI) * (1.0 - r2).exp();
        let rho = self.rho * (temp / t_bar).powf(1.0 / (g - 1.0));
        let s = eps / (2.0 * PI) * (0.5 * (1.0 - r2)).exp();
        [rho, self.u - s * y, self.v + s * x, rho * temp]
    }
}

/// Kelvin–Helmholtz shear layer on `[−1, 1]²`.
pub fn kelvin_helmholtz(x: f64, y: f64) -> [f64; 4] {
    let b = (15.0 * y + 7.5).tanh() - (15.0 * y - 7.5).tanh();
    [
        0.5 + 0.75 * b,
        0.5 * (b - 1.0),
        (2.0 * PI * x).sin() / 10.0,
        1.0,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vortex_centre_and_far_field() {
        let v = IsentropicVortex::default();
        let g: f64 = 1.4;
        let deficit = (g - 1.0) * 100.0 * 1f64.exp() / (8.0 * g * PI * PI);
        let [rho, u, vv, p] = v.primitive(0.0, 0.0, 0.0);
        let t = 10.0 - deficit;
        assert!((rho - (t / 10.0).powf(2.5)).abs() < 1e-15);
        assert!((p - rho * t).abs() < 1e-14);
        assert_eq!((u, vv), (1.0, 1.0));
        let far = v.primitive(7.9, -7.9, 0.0);
        for (a, b) in far.iter().zip([1.0, 1.0, 1.0, 10.0]) {
            assert!((a - b).abs() < 1e-12, "{far:?}");
        }
    }

    #[test]
    fn vortex_returns_after_one_period() {
        let v = IsentropicVortex::default();
        let a = v.primitive(0.3, -1.2, 0.0);
        let b = v.primitive(0.3, -1.2, 16.0);
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn kelvin_helmholtz_centre_line() {
        let b = 2.0 * 7.5f64.tanh();
        let s = kelvin_helmholtz(0.25, 0.0);
        assert!((s[0] - (0.5 + 0.75 * b)).abs() < 1e-15);
        assert!((s[1] - 0.5 * (b - 1.0)).abs() < 1e-15);
        assert!((s[2] - 0.1).abs() < 1e-15);
        assert_eq!(s[3], 1.0);
    }

    #[test]
    fn forcing_vanishes_for_uniform_flow() {
        let j = EulerJet {
            rho: Jet::constant(1.3),
            u: Jet::constant(0.4),
            v: Jet::constant(-0.2),
            p: Jet::constant(2.0),
        };
        assert!(skew_forcing(&j, 1.4, 2).iter().all(|&s| s == 0.0));
        assert!(conservative_forcing(&j, 1.4, 2).iter().all(|&s| s == 0.0));
    }

    #[test]
    fn skew_and_conservative_forcing_agree() {
        // Chain rule: s_r = s_ρ/(2r), s_m = (s_{ρu} − u s_ρ)/(2r) … at a point.
        let j = mms_1d(0.37, 0.81);
        let g = 1.4;
        let sk = skew_forcing(&j, g, 1);
        let cs = conservative_forcing(&j, g, 1);
        let r = j.rho.v.sqrt();
        let u = j.u.v;
        assert!((sk[0] - cs[0] / (2.0 * r)).abs() < 1e-12);
        let s_m = (cs[1] - u * cs[0]) / r + u * cs[0] / (2.0 * r);
        assert!((sk[1] - s_m).abs() < 1e-12, "{} vs {}", sk[1], s_m);
        let s_p = (g - 1.0) * (cs[2] - u * cs[1] + 0.5 * u * u * cs[0]);
        assert!((sk[2] - s_p / (2.0 * j.p.v.sqrt())).abs() < 1e-12);
    }
}
