//! Diagnostics CSV, field snapshots and run summaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::InvariantSeries;
use crate::error::{Error, Result};
use crate::grid::Grid;

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// `time,<channels…>` with relative changes, one row per sample.
pub fn diagnostics_csv(series: &InvariantSeries) -> String {
    let mut out = String::from("time");
    for name in &series.names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (t, row) in series.times.iter().zip(series.relative_rows()) {
        write!(out, "{t:?}").unwrap();
        for v in row {
            write!(out, ",{v:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_diagnostics_csv(path: &Path, series: &InvariantSeries) -> Result<()> {
    write_file(path, &diagnostics_csv(series))
}

/// Writes one snapshot: a CSV with `x` and every field in 1D, or one legacy
/// structured-points file per field in 2D. Returns the written paths.
pub fn write_snapshot(
    dir: &Path,
    index: usize,
    t: f64,
    grid: &Grid,
    fields: &[(&str, Vec<f64>)],
) -> Result<Vec<PathBuf>> {
    match grid {
        Grid::One(g) => {
            let path = dir.join(format!("snapshot_{index:03}.csv"));
            let mut text = format!("# t = {t:?}\nx");
            for (name, _) in fields {
                text.push(',');
                text.push_str(name);
            }
            text.push('\n');
            for i in 0..g.n() {
                write!(text, "{:?}", g.x(i)).unwrap();
                for (_, v) in fields {
                    write!(text, ",{:?}", v[i]).unwrap();
                }
                text.push('\n');
            }
            write_file(&path, &text)?;
            Ok(vec![path])
        }
        Grid::Two(g) => {
            let (nx, ny) = (g.nx(), g.ny());
            let mut paths = Vec::new();
            for (name, v) in fields {
                let path = dir.join(format!("{name}_{index:03}.vtk"));
                let mut text = format!(
                    "# vtk DataFile Version 3.0\n{name} t={t:?}\nASCII\nDATASET STRUCTURED_POINTS\n\
                     DIMENSIONS {nx} {ny} 1\nORIGIN {:?} {:?} 0\nSPACING {:?} {:?} 1\n\
                     POINT_DATA {}\nSCALARS {name} double 1\nLOOKUP_TABLE default\n",
                    g.gx.x_min(),
                    g.gy.x_min(),
                    g.gx.dx(),
                    g.gy.dx(),
                    nx * ny
                );
                // x varies fastest in the file.
                for iy in 0..ny {
                    for ix in 0..nx {
                        writeln!(text, "{:?}", v[g.index(ix, iy)]).unwrap();
                    }
                }
                write_file(&path, &text)?;
                paths.push(path);
            }
            Ok(paths)
        }
    }
}

/// Key-value record of a finished run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub scenario: String,
    pub scheme: String,
    pub operator: String,
    pub n: usize,
    pub dt: f64,
    pub t_final: f64,
    pub end_time: f64,
    pub steps: usize,
    pub crashed: bool,
    pub crash_time: Option<f64>,
    pub crash_stage_time: Option<f64>,
    pub crash_message: Option<String>,
    pub l2_error: Option<f64>,
    pub wall_time: f64,
    /// Smallest and largest relative change per invariant channel.
    pub extremes: BTreeMap<String, (f64, f64)>,
}

impl Summary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| writeln!(s, "{k} = {v}").unwrap();
        kv("scenario", self.scenario.clone());
        kv("scheme", self.scheme.clone());
        kv("operator", self.operator.clone());
        kv("n", self.n.to_string());
        kv("dt", format!("{:?}", self.dt));
        kv("t_final", format!("{:?}", self.t_final));
        kv("end_time", format!("{:?}", self.end_time));
        kv("steps", self.steps.to_string());
        kv("crashed", self.crashed.to_string());
        if let Some(t) = self.crash_time {
            kv("crash_time", format!("{t:?}"));
        }
        if let Some(t) = self.crash_stage_time {
            kv("crash_stage_time", format!("{t:?}"));
        }
        if let Some(m) = &self.crash_message {
            kv("crash_message", m.replace('\n', " "));
        }
        if let Some(e) = self.l2_error {
            kv("l2_error", format!("{e:?}"));
        }
        kv("wall_time", format!("{:?}", self.wall_time));
        for (name, (lo, hi)) in &self.extremes {
            kv(&format!("min_rel.{name}"), format!("{lo:?}"));
            kv(&format!("max_rel.{name}"), format!("{hi:?}"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let path = PathBuf::from("<summary>");
        let mut out = Summary::default();
        let mut lows: BTreeMap<String, f64> = BTreeMap::new();
        let mut highs: BTreeMap<String, f64> = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                path: path.clone(),
                line: i + 1,
                message,
            };
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let num = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{k}: {e}")));
            let int = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{k}: {e}")));
            match k {
                "scenario" => out.scenario = v.to_string(),
                "scheme" => out.scheme = v.to_string(),
                "operator" => out.operator = v.to_string(),
                "n" => out.n = int(v)?,
                "dt" => out.dt = num(v)?,
                "t_final" => out.t_final = num(v)?,
                "end_time" => out.end_time = num(v)?,
                "steps" => out.steps = int(v)?,
                "crashed" => out.crashed = v == "true",
                "crash_time" => out.crash_time = Some(num(v)?),
                "crash_stage_time" => out.crash_stage_time = Some(num(v)?),
                "crash_message" => out.crash_message = Some(v.to_string()),
                "l2_error" => out.l2_error = Some(num(v)?),
                "wall_time" => out.wall_time = num(v)?,
                _ => {
                    if let Some(name) = k.strip_prefix("min_rel.") {
                        lows.insert(name.to_string(), num(v)?);
                    } else if let Some(name) = k.strip_prefix("max_rel.") {
                        highs.insert(name.to_string(), num(v)?);
                    } else {
                        return Err(err(format!("unknown key `{k}`")));
                    }
                }
            }
        }
        for (name, lo) in lows {
            let hi = highs.get(&name).copied().unwrap_or(lo);
            out.extremes.insert(name, (lo, hi));
        }
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    write_file(path, text)
}
