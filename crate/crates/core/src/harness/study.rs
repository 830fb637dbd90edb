//! Single runs, resolution sweeps, crash matrices and probes driven by a
//! configuration.

use std::fmt::Write as _;
use std::path::Path;

use crate::diagnostics::{l2_error, probe_semidiscrete, ConvergenceTable, ProbeReport};
use crate::error::{Error, Result};
use crate::model::Variant;
use crate::sbp::OperatorSource;
use crate::time::{run, RunOptions, RunRecord};

use super::config::RunConfig;
use super::output::{write_diagnostics_csv, write_snapshot, write_text, Summary};
use super::scenarios::{build, build_with, supports};

pub struct RunOutcome {
    pub record: RunRecord,
    pub summary: Summary,
    pub state: Vec<f64>,
}

/// Integrates one configured scenario; with `out`, writes
/// `diagnostics.csv`, snapshots and `summary.txt` there.
pub fn run_scenario(cfg: &RunConfig, out: Option<&Path>) -> Result<RunOutcome> {
    let setup = build(cfg)?;
    let sys = setup.system.as_ref();
    let opts = RunOptions::new(setup.dt, cfg.t_final)
        .with_stride(cfg.stride)
        .with_snapshots(if out.is_some() {
            cfg.snapshots.clone()
        } else {
            Vec::new()
        });
    let mut state = setup.initial.clone();
    let mut index = 0;
    let record = run(sys, &mut state, &opts, |t, u| {
        if let Some(dir) = out {
            write_snapshot(
                &dir.join("snapshots"),
                index,
                t,
                sys.space().grid(),
                &sys.output_fields(u),
            )?;
            index += 1;
        }
        Ok(())
    })?;
    let l2 = match (&setup.exact, record.crashed()) {
        (Some(exact), false) => Some(l2_error(sys.space(), &state, &exact(record.end_time))?),
        _ => None,
    };
    let extremes = record
        .series
        .names
        .iter()
        .map(|name| {
            let r = record.series.relative(name).unwrap_or_default();
            let lo = r.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (name.clone(), (lo, hi))
        })
        .collect();
    let summary = Summary {
        scenario: cfg.scenario.clone(),
        scheme: cfg.scheme.to_string(),
        operator: cfg.operator.to_string(),
        n: cfg.n,
        dt: setup.dt,
        t_final: cfg.t_final,
        end_time: record.end_time,
        steps: record.steps,
        crashed: record.crashed(),
        crash_time: record.crash.as_ref().map(|c| c.time),
        crash_stage_time: record.crash.as_ref().map(|c| c.stage_time),
        crash_message: record.crash.as_ref().map(|c| c.message.clone()),
        l2_error: l2,
        wall_time: record.wall_time,
        extremes,
    };
    if let Some(dir) = out {
        write_diagnostics_csv(&dir.join("diagnostics.csv"), &record.series)?;
        summary.write(&dir.join("summary.txt"))?;
    }
    Ok(RunOutcome {
        record,
        summary,
        state,
    })
}

/// Runs `jobs` concurrently, returning results in input order.
fn parallel<T: Send, R: Send>(jobs: Vec<T>, f: impl Fn(T) -> R + Sync) -> Vec<R> {
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|job| s.spawn(move || f(job)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Error at `t_final` for each resolution; writes `convergence.csv` with `out`.
pub fn convergence(cfg: &RunConfig, out: Option<&Path>) -> Result<ConvergenceTable> {
    let info = super::scenarios::info(&cfg.scenario)?;
    if !info.has_exact {
        return Err(Error::Config(format!(
            "scenario `{}` has no exact solution",
            cfg.scenario
        )));
    }
    let mut ns = cfg.resolutions.clone();
    ns.sort_unstable();
    ns.dedup();
    let results = parallel(ns.clone(), |n| {
        let c = cfg.variant_of(n, cfg.scheme, &cfg.operator);
        run_scenario(&c, None).map(|o| (n, o))
    });
    let mut points = Vec::new();
    for r in results {
        let (n, o) = r?;
        let e = o.summary.l2_error.ok_or_else(|| {
            Error::Config(format!(
                "run with n = {n} crashed at t = {}; no error available",
                o.record.end_time
            ))
        })?;
        points.push((n, e));
    }
    let table = ConvergenceTable::new(
        format!("{} {} {}", cfg.scenario, cfg.scheme, cfg.operator),
        &points,
    );
    if let Some(dir) = out {
        let mut text = String::from("n,error,eoc\n");
        for row in &table.rows {
            let eoc = row.eoc.map_or_else(String::new, |e| format!("{e:?}"));
            writeln!(text, "{},{:?},{eoc}", row.n, row.error).unwrap();
        }
        write_text(&dir.join("convergence.csv"), &text)?;
    }
    Ok(table)
}

/// One cell of a crash matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CrashCell {
    pub operator: String,
    pub n: usize,
    pub scheme: Variant,
    pub end_time: f64,
    pub crashed: bool,
    /// Largest relative drift of mass and momenta up to the end time.
    pub conservation_drift: f64,
}

/// Runs every operator × resolution × scheme combination; writes
/// `crash_matrix.csv` with `out`.
pub fn crash_study(cfg: &RunConfig, out: Option<&Path>) -> Result<Vec<CrashCell>> {
    let info = super::scenarios::info(&cfg.scenario)?;
    let mut jobs: Vec<(OperatorSource, usize, Variant)> = Vec::new();
    for op in &cfg.operators {
        for &n in &cfg.resolutions {
            for &scheme in &cfg.schemes {
                if supports(info, cfg.form, scheme) {
                    jobs.push((op.clone(), n, scheme));
                }
            }
        }
    }
    let results = parallel(jobs, |(op, n, scheme)| {
        let c = cfg.variant_of(n, scheme, &op);
        run_scenario(&c, None).map(|o| {
            let series = &o.record.series;
            let drift = series
                .names
                .iter()
                .filter(|name| *name == "mass" || name.starts_with("momentum"))
                .filter_map(|name| series.max_abs_relative(name))
                .fold(0.0f64, f64::max);
            CrashCell {
                operator: op.to_string(),
                n,
                scheme,
                end_time: o.record.end_time,
                crashed: o.record.crashed(),
                conservation_drift: drift,
            }
        })
    });
    let cells = results.into_iter().collect::<Result<Vec<_>>>()?;
    if let Some(dir) = out {
        let mut text = String::from("operator,n,scheme,end_time,crashed,conservation_drift\n");
        for c in &cells {
            writeln!(
                text,
                "{},{},{},{:?},{},{:?}",
                c.operator, c.n, c.scheme, c.end_time, c.crashed, c.conservation_drift
            )
            .unwrap();
        }
        write_text(&dir.join("crash_matrix.csv"), &text)?;
    }
    Ok(cells)
}

/// Probes the unforced semi-discretization of a configured scenario.
pub fn probe(cfg: &RunConfig) -> Result<ProbeReport> {
    let setup = build_with(cfg, false)?;
    probe_semidiscrete(
        setup.system.as_ref(),
        cfg.scheme != Variant::EntropyConserving,
        cfg.trials,
        cfg.seed,
    )
}
