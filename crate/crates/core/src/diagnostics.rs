//! Error norms, convergence tables, invariant time series and semi-discrete
//! property probes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Invariant, System};
use crate::sbp::Space;

/// `sqrt(Σ_c ⟨e_c, e_c⟩_H)` with `e = numeric − exact`, components stored
/// one after another.
pub fn l2_error(space: &Space, numeric: &[f64], exact: &[f64]) -> Result<f64> {
    if numeric.len() != exact.len() {
        return Err(Error::SizeMismatch {
            expected: exact.len(),
            got: numeric.len(),
        });
    }
    let n = space.len();
    if n == 0 || !numeric.len().is_multiple_of(n) {
        return Err(Error::SizeMismatch {
            expected: n,
            got: numeric.len(),
        });
    }
    let w = space.weights();
    let sum: f64 = numeric
        .iter()
        .zip(exact)
        .enumerate()
        .map(|(i, (a, b))| w[i % n] * (a - b) * (a - b))
        .sum();
    Ok(sum.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub error: f64,
    /// `None` on the first row or when an error is not positive.
    pub eoc: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub label: String,
    pub rows: Vec<ConvergenceRow>,
}

/// `ln(e_{i−1}/e_i) / ln(n_i/n_{i−1})`.
pub fn eoc(n0: usize, e0: f64, n1: usize, e1: f64) -> Option<f64> {
    (e0 > 0.0 && e1 > 0.0 && n1 > n0).then(|| (e0 / e1).ln() / (n1 as f64 / n0 as f64).ln())
}

impl ConvergenceTable {
    pub fn new(label: impl Into<String>, points: &[(usize, f64)]) -> Self {
        let rows = points
            .iter()
            .enumerate()
            .map(|(i, &(n, error))| ConvergenceRow {
                n,
                error,
                eoc: i
                    .checked_sub(1)
                    .and_then(|j| eoc(points[j].0, points[j].1, n, error)),
            })
            .collect();
        Self {
            label: label.into(),
            rows,
        }
    }

    pub fn rates(&self) -> Vec<Option<f64>> {
        self.rows.iter().skip(1).map(|r| r.eoc).collect()
    }

    /// Smallest rate; `None` if any rate is undefined or there is only one row.
    pub fn min_rate(&self) -> Option<f64> {
        let rates = self.rates();
        if rates.is_empty() {
            return None;
        }
        rates
            .into_iter()
            .try_fold(f64::INFINITY, |m, r| r.map(|r| m.min(r)))
    }
}

/// Invariant values over time, reported as relative change from the first
/// sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InvariantSeries {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    values: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl InvariantSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: f64, inv: &[Invariant]) {
        if self.times.is_empty() {
            self.names = inv.iter().map(|i| i.name.to_string()).collect();
            self.norms = inv
                .iter()
                .map(|i| {
                    let m = i.value.abs().max(i.scale.abs());
                    if m > 0.0 {
                        m
                    } else {
                        1.0
                    }
                })
                .collect();
        }
        debug_assert_eq!(inv.len(), self.names.len());
        self.times.push(t);
        self.values.push(inv.iter().map(|i| i.value).collect());
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn channel_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Raw values of one channel.
    pub fn raw(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.channel_index(name)?;
        Some(self.values.iter().map(|row| row[c]).collect())
    }

    /// `(v − v₀) / max(|v₀|, scale₀)`; exactly zero on the first sample.
    pub fn relative(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.channel_index(name)?;
        let v0 = self.values.first()?[c];
        Some(
            self.values
                .iter()
                .map(|row| (row[c] - v0) / self.norms[c])
                .collect(),
        )
    }

    /// Relative changes for every sample, one row per time stamp.
    pub fn relative_rows(&self) -> Vec<Vec<f64>> {
        let Some(first) = self.values.first() else {
            return Vec::new();
        };
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .zip(first)
                    .zip(&self.norms)
                    .map(|((v, v0), s)| (v - v0) / s)
                    .collect()
            })
            .collect()
    }

    pub fn max_abs_relative(&self, name: &str) -> Option<f64> {
        self.relative(name)
            .map(|r| r.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }

    /// Largest increase between consecutive samples, relative to the initial
    /// magnitude; non-positive for a non-increasing channel.
    pub fn max_step_increase(&self, name: &str) -> Option<f64> {
        let r = self.relative(name)?;
        Some(
            r.windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Outcome of evaluating the semi-discrete identities on random states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub model: String,
    pub trials: usize,
    /// Largest `|⟨1, rate⟩| / scale` per conserved integral.
    pub conservation: Vec<(String, f64)>,
    /// Largest normalized residual of `⟨g, rate⟩_H = dissipation form`;
    /// `None` without an entropy estimate.
    pub entropy_residual: Option<f64>,
    /// Extremes of the dissipation quadratic form over the trials.
    pub dissipation_min: f64,
    pub dissipation_max: f64,
    /// Extremes of the unscaled entropy rate `⟨g, rate⟩_H`.
    pub entropy_rate_max: f64,
    pub dissipative: bool,
}

impl ProbeReport {
    pub fn max_conservation_residual(&self) -> f64 {
        self.conservation.iter().fold(0.0, |m, (_, r)| m.max(*r))
    }

    /// Checks all identities at relative tolerance `tol`.
    pub fn pass(&self, tol: f64) -> bool {
        let sign_ok = if self.dissipative {
            self.dissipation_max <= 0.0
        } else {
            self.dissipation_min == 0.0 && self.dissipation_max == 0.0
        };
        self.max_conservation_residual() <= tol
            && self.entropy_residual.is_none_or(|r| r <= tol)
            && sign_ok
    }
}

impl std::fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "model: {} ({} trials)", self.model, self.trials)?;
        for (name, r) in &self.conservation {
            writeln!(f, "conservation {name}: {r:.3e}")?;
        }
        match self.entropy_residual {
            Some(r) => writeln!(f, "entropy identity residual: {r:.3e}")?,
            None => writeln!(f, "entropy identity residual: n/a")?,
        }
        write!(
            f,
            "dissipation form range: [{:.3e}, {:.3e}]",
            self.dissipation_min, self.dissipation_max
        )
    }
}

/// Evaluates conservation and entropy identities of an unforced system on
/// `trials` random states drawn from `seed`.
pub fn probe_semidiscrete(
    system: &dyn System,
    dissipative: bool,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = system.space();
    let n = space.len();
    let mut conservation: Vec<(String, f64)> = Vec::new();
    let mut entropy_residual: Option<f64> = None;
    let mut dmin = f64::INFINITY;
    let mut dmax = f64::NEG_INFINITY;
    let mut emax = f64::NEG_INFINITY;
    let mut du = vec![0.0; system.len()];
    for _ in 0..trials {
        let u = system.random_state(&mut rng);
        system.rhs(0.0, &u, &mut du)?;
        for r in system.conservation_rates(&u, &du) {
            let rel = if r.scale > 0.0 {
                r.value.abs() / r.scale
            } else {
                r.value.abs()
            };
            match conservation.iter_mut().find(|(name, _)| name == r.name) {
                Some(entry) => entry.1 = entry.1.max(rel),
                None => conservation.push((r.name.to_string(), rel)),
            }
        }
        let diss = system.dissipation_form(&u)?;
        dmin = dmin.min(diss);
        dmax = dmax.max(diss);
        if let Some(g) = system.entropy_variables(&u) {
            let mut value = 0.0;
            let mut scale = diss.abs();
            for c in 0..system.components() {
                let gc = &g[c * n..(c + 1) * n];
                let rc = &du[c * n..(c + 1) * n];
                value += space.inner(gc, rc);
                scale += space
                    .weights()
                    .iter()
                    .zip(gc.iter().zip(rc))
                    .map(|(w, (a, b))| w * (a * b).abs())
                    .sum::<f64>();
            }
            emax = emax.max(value);
            let res = (value - diss).abs() / if scale > 0.0 { scale } else { 1.0 };
            entropy_residual = Some(entropy_residual.map_or(res, |m: f64| m.max(res)));
        }
    }
    Ok(ProbeReport {
        model: system.name().to_string(),
        trials,
        conservation,
        entropy_residual,
        dissipation_min: dmin,
        dissipation_max: dmax,
        entropy_rate_max: emax,
        dissipative,
    })
}
