//! Initial data, exact solutions and manufactured forcing for the shallow
//! water test cases.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::grid::Grid;
use crate::jet::Jet;
use crate::model::Forcing;
use crate::sbp::Space;
use crate::swe::SweForm;

/// Values and first derivatives of `(h, u, v)` at a point.
#[derive(Debug, Clone, Copy)]
pub struct SweJet {
    pub h: Jet,
    pub u: Jet,
    pub v: Jet,
}

/// `s = U_t + ∇·f(U)` for the flux-form state `(h, hu, hv)`.
pub fn flux_forcing(p: &SweJet, g: f64) -> [f64; 3] {
    let SweJet { h, u, v } = *p;
    let hu = h * u;
    let hv = h * v;
    let fx = [hu, hu * u + 0.5 * g * h * h, hu * v];
    let fy = [hv, hu * v, hv * v + 0.5 * g * h * h];
    let s = |c: usize, q: Jet| q.t + fx[c].x + fy[c].y;
    [s(0, h), s(1, hu), s(2, hv)]
}

/// Forcing for the vector-invariant state `(h, u, v)`.
pub fn vecinv_forcing(p: &SweJet, g: f64, f: f64) -> [f64; 3] {
    let SweJet { h, u, v } = *p;
    let mass = h.t + (h * u).x + (h * v).y;
    let big_g = 0.5 * (u * u + v * v) + g * h;
    let w = v.x - u.y + f;
    [mass, u.t - w * v.v + big_g.x, v.t + w * u.v + big_g.y]
}

/// `h = 2 + 0.3 sin(2π(x − t))`, `u = 2 + 0.3 sin(2π(x + t))`.
pub fn mms_1d(x: f64, t: f64) -> SweJet {
    let (sa, ca) = (2.0 * PI * (x - t)).sin_cos();
    let (sb, cb) = (2.0 * PI * (x + t)).sin_cos();
    let k = 0.6 * PI;
    SweJet {
        h: Jet::new(2.0 + 0.3 * sa, -k * ca, k * ca, 0.0),
        u: Jet::new(2.0 + 0.3 * sb, k * cb, k * cb, 0.0),
        v: Jet::constant(0.0),
    }
}

/// `h = 2 + 0.2 sin(2π(x − t)) sin(2π(y − t))`,
/// `u = v = 2 + 0.2 sin(2π(x + t)) sin(2π(y + t))`.
pub fn mms_2d(x: f64, y: f64, t: f64) -> SweJet {
    let [ax, bx] = mms_phases(x, t);
    let [ay, by] = mms_phases(y, t);
    mms_2d_from(ax, ay, bx, by)
}

/// `sin_cos` of `2π(s − t)` and `2π(s + t)`.
fn mms_phases(s: f64, t: f64) -> [(f64, f64); 2] {
    [
        (2.0 * PI * (s - t)).sin_cos(),
        (2.0 * PI * (s + t)).sin_cos(),
    ]
}

fn mms_2d_from(ax: (f64, f64), ay: (f64, f64), bx: (f64, f64), by: (f64, f64)) -> SweJet {
    let k = 0.4 * PI;
    let ((sx, cx), (sy, cy)) = (ax, ay);
    let hx = k * cx * sy;
    let hy = k * sx * cy;
    let h = Jet::new(2.0 + 0.2 * sx * sy, -(hx + hy), hx, hy);
    let ((sx, cx), (sy, cy)) = (bx, by);
    let ux = k * cx * sy;
    let uy = k * sx * cy;
    let u = Jet::new(2.0 + 0.2 * sx * sy, ux + uy, ux, uy);
    SweJet { h, u, v: u }
}

/// Manufactured forcing for either form, in 1D or 2D. The 2D solution is
/// separable, so its phases are tabulated per grid line.
pub fn mms_forcing(form: SweForm, g: f64) -> Forcing {
    let source = move |j: &SweJet| match form {
        SweForm::Flux => flux_forcing(j, g),
        SweForm::VectorInvariant => vecinv_forcing(j, g, 0.0),
    };
    Arc::new(move |t: f64, space: &Space, du: &mut [f64]| {
        let n = space.len();
        match space.grid() {
            Grid::One(grid) => {
                for i in 0..n {
                    let s = source(&mms_1d(grid.x(i), t));
                    du[i] += s[0];
                    du[n + i] += s[1];
                }
            }
            Grid::Two(grid) => {
                let xs: Vec<_> = (0..grid.nx())
                    .map(|i| mms_phases(grid.gx.x(i), t))
                    .collect();
                let ys: Vec<_> = (0..grid.ny())
                    .map(|i| mms_phases(grid.gy.x(i), t))
                    .collect();
                for (ix, [ax, bx]) in xs.iter().enumerate() {
                    for (iy, [ay, by]) in ys.iter().enumerate() {
                        let k = grid.index(ix, iy);
                        let s = source(&mms_2d_from(*ax, *ay, *bx, *by));
                        for (c, v) in s.iter().enumerate() {
                            du[c * n + k] += v;
                        }
                    }
                }
            }
        }
    })
}

pub const LAKE_LENGTH: f64 = 25.0;
pub const LAKE_LEVEL: f64 = 0.5;

/// Immersed bump `b = 0.2 − 0.05(x − 10)²` on `8 < x < 12`.
pub fn lake_bottom(x: f64) -> f64 {
    if x > 8.0 && x < 12.0 {
        0.2 - 0.05 * (x - 10.0) * (x - 10.0)
    } else {
        0.0
    }
}

/// Steady state `h = 0.5 − b`, `u = 0`.
pub fn lake_at_rest(x: f64) -> (f64, f64) {
    (LAKE_LEVEL - lake_bottom(x), 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergingVortices {
    pub f: f64,
    pub g: f64,
    pub depth: f64,
}

impl Default for MergingVortices {
    fn default() -> Self {
        Self {
            f: 5.0,
            g: 5.0,
            depth: 8.0,
        }
    }
}

impl MergingVortices {
    pub const LENGTH: f64 = 2.0 * PI;

    /// Stream function `ψ₊ + ψ₋` and its gradient.
    pub fn psi(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let mut out = (0.0, 0.0, 0.0);
        for sign in [-1.0, 1.0] {
            let xc = (3.05 + sign * 0.45) * PI / 3.0;
            let (dx, dy) = (x - xc, y - PI);
            let e = (-2.5 * (dx * dx + dy * dy)).exp();
            out.0 += e;
            out.1 += -5.0 * dx * e;
            out.2 += -5.0 * dy * e;
        }
        out
    }

    /// Geostrophically balanced `(h, u, v)`.
    pub fn initial(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (psi, px, py) = self.psi(x, y);
        (self.depth + self.f / self.g * psi, -py, px)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarotropicShear {
    pub length: f64,
    pub u0: f64,
    pub f: f64,
    pub g: f64,
    pub depth: f64,
    pub k: f64,
    /// Inverse jet width.
    pub a: f64,
}

impl Default for BarotropicShear {
    fn default() -> Self {
        Self {
            length: 4e7,
            u0: 50.0,
            f: 7.292e-5,
            g: 9.80616,
            depth: 1e4,
            k: 1e3,
            a: 1e-6,
        }
    }
}

impl BarotropicShear {
    fn y_plus(&self) -> f64 {
        0.25 * self.length
    }

    fn y_minus(&self) -> f64 {
        0.75 * self.length
    }

    pub fn u(&self, y: f64) -> f64 {
        let sech = |z: f64| 1.0 / z.cosh();
        self.u0 * (sech(self.a * (y - self.y_plus())) - sech(self.a * (y - self.y_minus())))
    }

    /// `∫₀^y u ds` in closed form, using `∫ sech(a s) ds = atan(sinh(a s))/a`.
    pub fn u_integral(&self, y: f64) -> f64 {
        let prim = |y0: f64, s: f64| (self.a * (s - y0)).sinh().atan() / self.a;
        let jet = |y0: f64| prim(y0, y) - prim(y0, 0.0);
        self.u0 * (jet(self.y_plus()) - jet(self.y_minus()))
    }

    pub fn initial(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let l = self.length;
        let bump = |xi: f64, yi: f64| {
            let d = ((x - xi) / l).powi(2) + ((y - yi) / l).powi(2);
            (-self.k * d).exp()
        };
        let h_tilde =
            0.01 * self.depth * (bump(0.85 * l, self.y_minus()) + bump(0.15 * l, self.y_plus()));
        let h = self.depth - self.f / self.g * self.u_integral(y) + h_tilde;
        (h, self.u(y), 0.0)
    }
}
