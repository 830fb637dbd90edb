use dpsbp_core::burgers::{burgers_entropy_total, burgers_mms, rhs_burgers, Burgers};
use dpsbp_core::diagnostics::probe_semidiscrete;
use dpsbp_core::euler::scenarios::{mms_1d as euler_mms, skew_forcing, IsentropicVortex};
use dpsbp_core::euler::{
    euler_energy_total, euler_thermo_entropy_total, primitive_to_skew, skew_to_primitive, Euler,
    EulerParams, Primitive,
};
use dpsbp_core::sbp::{periodic_pair, OperatorCoefficients, Space};
use dpsbp_core::swe::scenarios::{lake_at_rest, lake_bottom, mms_1d as swe_mms, LAKE_LENGTH};
use dpsbp_core::swe::{ShallowWater, SweForm, SweParams};
use dpsbp_core::{pointwise, Grid1D, System, Variant};
use proptest::prelude::*;

fn line(n: usize, x0: f64, len: f64) -> Space {
    Space::one(
        periodic_pair(
            &OperatorCoefficients::dp2(),
            &Grid1D::new(n, x0, len).unwrap(),
        )
        .unwrap(),
    )
}

fn square(n: usize, x0: f64, len: f64) -> Space {
    let p = periodic_pair(
        &OperatorCoefficients::dp2(),
        &Grid1D::new(n, x0, len).unwrap(),
    )
    .unwrap();
    Space::two(p.clone(), p)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

#[test]
fn burgers_constant_state_is_steady() {
    let s = line(32, 0.0, 1.0);
    for v in Variant::ALL {
        let mut out = vec![1.0; 32];
        rhs_burgers(&s, v, &[1.7; 32], &mut out).unwrap();
        assert!(max_abs(&out) < 1e-13, "{v}");
    }
}

#[test]
fn burgers_probes() {
    for v in Variant::ALL {
        let sys = Burgers::new(line(64, 0.0, 1.0), v);
        let rep = probe_semidiscrete(&sys, v != Variant::EntropyConserving, 100, 7).unwrap();
        assert!(rep.pass(1e-12), "{v}: {rep}");
    }
}

#[test]
fn burgers_entropy_of_a_sine() {
    let s = line(256, 0.0, 1.0);
    let u = s.sample(|p| (2.0 * std::f64::consts::PI * p[0]).sin());
    assert!((burgers_entropy_total(&s, &u) - 0.25).abs() < 1e-6);
    assert!((burgers_entropy_total(&s, &vec![1.0; 256]) - 0.5).abs() < 1e-12);
}

#[test]
fn burgers_truncation_error_decays() {
    let residual = |n: usize| {
        let s = line(n, -1.0, 2.0);
        let sys = Burgers::new(s.clone(), Variant::EntropyConserving).with_mms_forcing();
        let t = 0.3;
        let u = s.sample(|p| burgers_mms(p[0], t).0);
        let exact_rate = s.sample(|p| {
            -0.6 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * (p[0] - t)).cos()
        });
        let mut du = vec![0.0; n];
        sys.rhs(t, &u, &mut du).unwrap();
        let diff: Vec<f64> = du.iter().zip(&exact_rate).map(|(a, b)| a - b).collect();
        s.inner(&diff, &diff).sqrt()
    };
    let order = (residual(64) / residual(128)).log2();
    assert!(order > 1.4, "{order}");
}

#[test]
fn burgers_mms_forcing_matches_time_derivative() {
    let (x, t, eps) = (0.41, 0.77, 1e-6);
    let u = |t: f64| burgers_mms(x, t).0;
    let ux = (burgers_mms(x + eps, t).0 - burgers_mms(x - eps, t).0) / (2.0 * eps);
    let ut = (u(t + eps) - u(t - eps)) / (2.0 * eps);
    assert!((burgers_mms(x, t).1 - (ut + u(t) * ux)).abs() < 1e-7);
    assert_eq!(burgers_mms(0.0, 0.0).0, 2.0);
}

fn swe_systems(dims: usize) -> Vec<(ShallowWater, bool)> {
    let space = if dims == 1 {
        line(48, 0.0, 1.0)
    } else {
        square(20, 0.0, 1.0)
    };
    let mut out = Vec::new();
    for v in Variant::ALL {
        let sys = ShallowWater::new(space.clone(), SweParams::new(9.81), v, SweForm::Flux).unwrap();
        out.push((sys, v != Variant::EntropyConserving));
    }
    out.push((
        ShallowWater::new(
            space,
            SweParams::new(9.81),
            Variant::EntropyConserving,
            SweForm::VectorInvariant,
        )
        .unwrap(),
        false,
    ));
    out
}

#[test]
fn swe_probes() {
    for dims in [1, 2] {
        for (sys, diss) in swe_systems(dims) {
            let rep = probe_semidiscrete(&sys, diss, 100, 11).unwrap();
            assert!(
                rep.pass(1e-11),
                "{} {dims}D {}: {rep}",
                sys.name(),
                sys.variant()
            );
        }
    }
}

#[test]
fn swe_rotation_and_topography_probes() {
    let s = square(16, 0.0, 1.0);
    let b = s.sample(|p| {
        0.2 * (2.0 * std::f64::consts::PI * p[0]).sin() * (2.0 * std::f64::consts::PI * p[1]).cos()
    });
    for v in [Variant::EntropyStable, Variant::EntropyConserving] {
        let params = SweParams::new(9.81)
            .with_coriolis(3.0)
            .with_topography(b.clone());
        let sys = ShallowWater::new(s.clone(), params, v, SweForm::Flux).unwrap();
        let rep = probe_semidiscrete(&sys, v == Variant::EntropyStable, 50, 3).unwrap();
        assert!(rep.pass(1e-11), "{v}: {rep}");
    }
    let params = SweParams::new(9.81).with_coriolis(3.0).with_topography(b);
    let sys = ShallowWater::new(
        s,
        params,
        Variant::EntropyConserving,
        SweForm::VectorInvariant,
    )
    .unwrap();
    let rep = probe_semidiscrete(&sys, false, 50, 3).unwrap();
    assert!(rep.pass(1e-11), "vecinv: {rep}");
}

#[test]
fn vector_invariant_rejects_dissipative_variants() {
    let s = line(16, 0.0, 1.0);
    for v in [Variant::EntropyStable, Variant::LinearlyStable] {
        assert!(
            ShallowWater::new(s.clone(), SweParams::new(1.0), v, SweForm::VectorInvariant).is_err()
        );
    }
    assert!(ShallowWater::new(
        s,
        SweParams::new(0.0),
        Variant::EntropyStable,
        SweForm::Flux
    )
    .is_err());
}

#[test]
fn lake_at_rest_is_steady_for_all_variants() {
    let s = line(64, 0.0, LAKE_LENGTH);
    let b = s.sample(|p| lake_bottom(p[0]));
    let h = s.sample(|p| lake_at_rest(p[0]).0);
    for v in Variant::ALL {
        let sys = ShallowWater::new(
            s.clone(),
            SweParams::new(9.81).with_topography(b.clone()),
            v,
            SweForm::Flux,
        )
        .unwrap();
        let u = sys.state_from_primitive(&h, &[vec![0.0; 64]]);
        let mut du = vec![1.0; u.len()];
        sys.rhs(0.0, &u, &mut du).unwrap();
        assert!(max_abs(&du) < 1e-13, "{v}: {}", max_abs(&du));
    }
}

#[test]
fn swe_mms_residual_decays() {
    let residual = |n: usize| {
        let s = line(n, -1.0, 2.0);
        let sys = ShallowWater::new(
            s.clone(),
            SweParams::new(9.81),
            Variant::EntropyStable,
            SweForm::Flux,
        )
        .unwrap()
        .with_forcing(pointwise(|t, x, out| {
            let f = dpsbp_core::swe::scenarios::flux_forcing(&swe_mms(x[0], t), 9.81);
            out.copy_from_slice(&f[..2]);
        }));
        let t = 0.2;
        let j: Vec<_> = (0..n)
            .map(|i| swe_mms(-1.0 + 2.0 * i as f64 / (n - 1) as f64, t))
            .collect();
        let mut u: Vec<f64> = j.iter().map(|p| p.h.v).collect();
        u.extend(j.iter().map(|p| p.h.v * p.u.v));
        let mut exact: Vec<f64> = j.iter().map(|p| p.h.t).collect();
        exact.extend(j.iter().map(|p| p.h.t * p.u.v + p.h.v * p.u.t));
        let mut du = vec![0.0; 2 * n];
        sys.rhs(t, &u, &mut du).unwrap();
        let d: Vec<f64> = du.iter().zip(&exact).map(|(a, b)| a - b).collect();
        dpsbp_core::diagnostics::l2_error(&s, &d, &vec![0.0; 2 * n]).unwrap()
    };
    let order = (residual(64) / residual(128)).log2();
    assert!(order > 1.4, "{order}");
}

fn euler_systems(dims: usize) -> Vec<Euler> {
    let space = if dims == 1 {
        line(48, 0.0, 1.0)
    } else {
        square(20, 0.0, 1.0)
    };
    Variant::ALL
        .iter()
        .map(|&v| Euler::new(space.clone(), EulerParams::default(), v))
        .collect()
}

#[test]
fn euler_probes() {
    for dims in [1, 2] {
        for sys in euler_systems(dims) {
            let diss = sys.variant() != Variant::EntropyConserving;
            let rep = probe_semidiscrete(&sys, diss, 100, 5).unwrap();
            assert!(rep.pass(1e-11), "{dims}D {}: {rep}", sys.variant());
        }
    }
}

#[test]
fn euler_uniform_state_is_steady() {
    for sys in euler_systems(2) {
        let u = sys.sample(|_| [1.3, 0.4, -0.7, 2.1]).unwrap();
        let mut du = vec![1.0; u.len()];
        sys.rhs(0.0, &u, &mut du).unwrap();
        assert!(max_abs(&du) < 1e-12, "{}", sys.variant());
    }
}

#[test]
fn euler_negative_pressure_is_a_fault() {
    let sys = &euler_systems(1)[0];
    let mut u = sys.sample(|_| [1.0, 0.0, 0.0, 1.0]).unwrap();
    u[3 * 48 - 1] = -0.1;
    let mut du = vec![0.0; u.len()];
    assert!(sys.rhs(0.0, &u, &mut du).is_err());
}

#[test]
fn euler_energy_total_of_constants() {
    let s = square(17, 0.0, 1.0);
    let n = s.len();
    let prim = |rho: f64| Primitive {
        rho: vec![rho; n],
        vel: vec![vec![0.0; n]; 2],
        p: vec![1.0; n],
    };
    assert!((euler_energy_total(&s, 1.4, &prim(1.0)) - 3.5).abs() < 1e-12);
    assert!((euler_energy_total(&s, 1.4, &prim(4.0)) - 6.5).abs() < 1e-12);
    assert!(
        euler_thermo_entropy_total(&s, 1.4, &prim(1.0))
            .unwrap()
            .abs()
            < 1e-15
    );
    let mut p = prim(1.0);
    p.p = vec![0.4f64.exp(); n];
    assert!((euler_thermo_entropy_total(&s, 1.4, &p).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn vortex_energy_total_matches_fine_quadrature() {
    let v = IsentropicVortex::default();
    let density = |x: f64, y: f64| {
        let [rho, u, w, p] = v.primitive(x, y, 0.0);
        rho * (1.0 + 0.5 * (u * u + w * w)) + p / 0.4
    };
    // Periodic trapezoid rule on a fine grid as the reference.
    let m = 1024;
    let h = 16.0 / m as f64;
    let mut reference = 0.0;
    for i in 0..m {
        for j in 0..m {
            reference += density(-8.0 + i as f64 * h, -8.0 + j as f64 * h);
        }
    }
    reference *= h * h;
    let s = square(64, -8.0, 16.0);
    let sys = Euler::new(s.clone(), EulerParams::default(), Variant::EntropyStable);
    let u = sys.sample(|p| v.primitive(p[0], p[1], 0.0)).unwrap();
    let e = euler_energy_total(&s, 1.4, &sys.primitive(&u));
    assert!(
        ((e - reference) / reference).abs() < 1e-8,
        "{e} vs {reference}"
    );
}

#[test]
fn euler_mms_residual_decays() {
    let residual = |n: usize| {
        let s = line(n, -1.0, 2.0);
        let sys = Euler::new(s.clone(), EulerParams::default(), Variant::EntropyStable)
            .with_forcing(pointwise(|t, x, out| {
                out.copy_from_slice(&skew_forcing(&euler_mms(x[0], t), 1.4, 1))
            }));
        let t = 0.2;
        let u = sys
            .sample(|p| {
                let j = euler_mms(p[0], t);
                [j.rho.v, j.u.v, 0.0, j.p.v]
            })
            .unwrap();
        let eps = 1e-5;
        let at = |t: f64| {
            sys.sample(|p| {
                let j = euler_mms(p[0], t);
                [j.rho.v, j.u.v, 0.0, j.p.v]
            })
            .unwrap()
        };
        let (a, b) = (at(t + eps), at(t - eps));
        let exact: Vec<f64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x - y) / (2.0 * eps))
            .collect();
        let mut du = vec![0.0; u.len()];
        sys.rhs(t, &u, &mut du).unwrap();
        dpsbp_core::diagnostics::l2_error(&s, &du, &exact).unwrap()
    };
    let order = (residual(64) / residual(128)).log2();
    assert!(order > 1.4, "{order}");
}

proptest! {
    #[test]
    fn skew_variables_round_trip(
        rho in 1e-3f64..1e3, u in -50.0f64..50.0, v in -50.0f64..50.0, p in 1e-3f64..1e3,
    ) {
        let prim = Primitive { rho: vec![rho], vel: vec![vec![u], vec![v]], p: vec![p] };
        let back = skew_to_primitive(&primitive_to_skew(&prim).unwrap(), 1);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        prop_assert!(rel(back.rho[0], rho) <= 1e-15 * 2.0);
        prop_assert!(rel(back.p[0], p) <= 1e-15 * 2.0);
        prop_assert!((back.vel[0][0] - u).abs() <= 1e-15 * 4.0 * u.abs().max(1.0));
        prop_assert!((back.vel[1][0] - v).abs() <= 1e-15 * 4.0 * v.abs().max(1.0));
    }

    #[test]
    fn burgers_entropy_identity(seed in any::<u64>()) {
        let sys = Burgers::new(line(40, 0.0, 1.0), Variant::EntropyStable);
        let rep = probe_semidiscrete(&sys, true, 1, seed).unwrap();
        prop_assert!(rep.pass(1e-12), "{}", rep);
    }
}
