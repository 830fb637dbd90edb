//! Five-stage fourth-order strong-stability-preserving Runge–Kutta
//! integration and the run loop.

use std::time::Instant;

use crate::diagnostics::InvariantSeries;
use crate::error::{check_finite, Fault, Result};
use crate::model::System;

/// Shu–Osher coefficients of SSPRK(5,4). The last weight of each convex
/// combination is one minus the others so that constants are preserved exactly.
mod coef {
    pub const A10: f64 = 0.391752226571890;

    pub const A20: f64 = 0.444370493651235;
    pub const A21: f64 = 1.0 - A20;
    pub const B21: f64 = 0.368410593050371;

    pub const A30: f64 = 0.620101851488403;
    pub const A32: f64 = 1.0 - A30;
    pub const B32: f64 = 0.251891774271694;

    pub const A40: f64 = 0.178079954393132;
    pub const A43: f64 = 1.0 - A40;
    pub const B43: f64 = 0.544974750228521;

    pub const A52: f64 = 0.517231671970585;
    pub const A53: f64 = 0.096059710526147;
    pub const B53: f64 = 0.063692468666290;
    pub const A54: f64 = 1.0 - A52 - A53;
    pub const B54: f64 = 0.226007483236906;
}

/// A fault raised inside a step, with the time of the failing stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageFault {
    pub fault: Fault,
    pub stage_time: f64,
}

/// Stage storage reused across steps.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    u0: Vec<f64>,
    u2: Vec<f64>,
    u3: Vec<f64>,
    k: Vec<f64>,
    k3: Vec<f64>,
}

impl Workspace {
    pub fn new(len: usize) -> Self {
        Self {
            u0: vec![0.0; len],
            u2: vec![0.0; len],
            u3: vec![0.0; len],
            k: vec![0.0; len],
            k3: vec![0.0; len],
        }
    }
}

/// Advances `u` from `t` to `t + dt` in place.
pub fn ssprk54_step<F>(
    mut rhs: F,
    t: f64,
    u: &mut [f64],
    dt: f64,
    ws: &mut Workspace,
) -> std::result::Result<(), StageFault>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> std::result::Result<(), Fault>,
{
    use coef::*;
    let n = u.len();
    if ws.u0.len() != n {
        *ws = Workspace::new(n);
    }
    let Workspace { u0, u2, u3, k, k3 } = ws;
    let mut eval = |time: f64, state: &[f64], out: &mut [f64]| {
        rhs(time, state, out).map_err(|fault| StageFault {
            fault,
            stage_time: time,
        })
    };
    u0.copy_from_slice(u);

    eval(t, u0, k)?;
    let t1 = t + A10 * dt;
    for i in 0..n {
        u[i] = u0[i] + A10 * dt * k[i];
    }

    eval(t1, u, k)?;
    let t2 = A20 * t + A21 * t1 + B21 * dt;
    for i in 0..n {
        u2[i] = A20 * u0[i] + A21 * u[i] + B21 * dt * k[i];
    }

    eval(t2, u2, k)?;
    let t3 = A30 * t + A32 * t2 + B32 * dt;
    for i in 0..n {
        u3[i] = A30 * u0[i] + A32 * u2[i] + B32 * dt * k[i];
    }

    eval(t3, u3, k3)?;
    let t4 = A40 * t + A43 * t3 + B43 * dt;
    for i in 0..n {
        u[i] = A40 * u0[i] + A43 * u3[i] + B43 * dt * k3[i];
    }

    eval(t4, u, k)?;
    for i in 0..n {
        u[i] = A52 * u2[i] + A53 * u3[i] + B53 * dt * k3[i] + A54 * u[i] + B54 * dt * k[i];
    }
    check_finite("state", u).map_err(|fault| StageFault {
        fault,
        stage_time: t + dt,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub dt: f64,
    pub t_final: f64,
    /// Record invariants every `stride` steps (and always at the end).
    pub stride: usize,
    /// A snapshot is taken at the first step reaching each of these times.
    pub snapshot_times: Vec<f64>,
}

impl RunOptions {
    pub fn new(dt: f64, t_final: f64) -> Self {
        Self {
            dt,
            t_final,
            stride: 1,
            snapshot_times: Vec::new(),
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride.max(1);
        self
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    /// Number of steps; the last one is shortened to land on `t_final`.
    pub fn step_count(&self) -> usize {
        let ratio = self.t_final / self.dt;
        let n = ratio.round();
        if (ratio - n).abs() <= 1e-9 * ratio.max(1.0) {
            n as usize
        } else {
            ratio.ceil() as usize
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crash {
    /// Start time of the step that failed.
    pub time: f64,
    /// Time of the stage at which the failure was detected.
    pub stage_time: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub t_final: f64,
    /// Time of the last completed step.
    pub end_time: f64,
    pub steps: usize,
    pub dt: f64,
    pub crash: Option<Crash>,
    pub series: InvariantSeries,
    pub wall_time: f64,
}

impl RunRecord {
    pub fn crashed(&self) -> bool {
        self.crash.is_some()
    }
}

/// Integrates `system` from `t = 0`, leaving the last good state in `u`.
///
/// `on_snapshot(t, u)` is called at `t = 0` if requested, and at the first
/// step reaching every other requested time. A fault stops the run and is
/// recorded, not returned.
pub fn run(
    system: &dyn System,
    u: &mut [f64],
    opts: &RunOptions,
    mut on_snapshot: impl FnMut(f64, &[f64]) -> Result<()>,
) -> Result<RunRecord> {
    if !(opts.dt > 0.0 && opts.t_final > 0.0) {
        return Err(crate::Error::Config(format!(
            "time step and final time must be positive (dt = {}, t_final = {})",
            opts.dt, opts.t_final
        )));
    }
    let start = Instant::now();
    let steps = opts.step_count();
    let stride = opts.stride.max(1);
    let mut pending: Vec<f64> = opts.snapshot_times.clone();
    pending.sort_by(f64::total_cmp);
    pending.retain(|&s| s <= opts.t_final + 1e-12);
    let mut pending = pending.into_iter().peekable();

    let mut series = InvariantSeries::new();
    series.push(0.0, &system.invariants(u));
    while pending.peek().is_some_and(|&s| s <= 1e-12) {
        pending.next();
        on_snapshot(0.0, u)?;
    }

    let mut ws = Workspace::new(u.len());
    let mut t = 0.0;
    let mut crash = None;
    let mut done = 0;
    for step in 0..steps {
        let t_next = if step + 1 == steps {
            opts.t_final
        } else {
            (step + 1) as f64 * opts.dt
        };
        let backup = u.to_vec();
        let result = ssprk54_step(
            |tt, uu, du| system.rhs(tt, uu, du),
            t,
            u,
            t_next - t,
            &mut ws,
        );
        if let Err(e) = result {
            u.copy_from_slice(&backup);
            crash = Some(Crash {
                time: t,
                stage_time: e.stage_time,
                message: e.fault.to_string(),
            });
            break;
        }
        t = t_next;
        done = step + 1;
        let last = done == steps;
        if done % stride == 0 || last {
            series.push(t, &system.invariants(u));
        }
        while pending.peek().is_some_and(|&s| s <= t + 1e-12) {
            pending.next();
            on_snapshot(t, u)?;
        }
    }
    if crash.is_some() && series.times.last() != Some(&t) {
        series.push(t, &system.invariants(u));
    }
    Ok(RunRecord {
        t_final: opts.t_final,
        end_time: t,
        steps: done,
        dt: opts.dt,
        crash,
        series,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
