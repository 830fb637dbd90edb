//! Numerical verification of the dual-pairing properties of an operator pair.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pair::DpOperatorPair;

/// Limits on the residuals. All except `quadrature` are multiplied by
/// `1/dx` of a unit-length grid with the same number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub quadrature: f64,
    pub sbp: f64,
    pub symmetry: f64,
    pub eigenvalue: f64,
    pub exactness: f64,
    /// Largest size handled by a dense eigen-decomposition; above it the
    /// quadratic form is sampled.
    pub dense_limit: usize,
    pub samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quadrature: 1e-12,
            sbp: 1e-12,
            symmetry: 1e-12,
            eigenvalue: 1e-10,
            exactness: 1e-10,
            dense_limit: 512,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Dense,
    Sampled,
}

/// Largest exactness residual for one monomial degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessRow {
    pub degree: usize,
    pub boundary: f64,
    pub interior: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub property: &'static str,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub n: usize,
    pub periodic: bool,
    pub min_weight: f64,
    pub weight_sum: f64,
    pub length: f64,
    pub exactness: Vec<ExactnessRow>,
    pub declared_interior_order: usize,
    pub declared_boundary_order: usize,
    pub measured_interior_order: Option<usize>,
    pub measured_boundary_order: Option<usize>,
    /// `‖Q₋ + Q₊ᵀ − B‖_max`.
    pub sbp_residual: f64,
    /// `‖Q + Qᵀ − B‖_max` for the central average.
    pub central_residual: f64,
    /// `‖A − Aᵀ‖_max` with `A = H(D₊ − D₋)`.
    pub symmetry_residual: f64,
    /// Largest eigenvalue of `(A + Aᵀ)/2`.
    pub max_eigenvalue: f64,
    pub eigen_method: EigenMethod,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| {
                format!(
                    "{} residual {:.3e} exceeds {:.3e}",
                    c.property, c.value, c.limit
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = |o: Option<usize>| o.map_or("none".to_string(), |o| o.to_string());
        writeln!(f, "operator           {}", self.name)?;
        writeln!(f, "points             {}", self.n)?;
        writeln!(f, "periodic           {}", self.periodic)?;
        writeln!(f, "min norm weight    {:.6e}", self.min_weight)?;
        writeln!(
            f,
            "norm weight sum    {:.15e} (length {:.15e})",
            self.weight_sum, self.length
        )?;
        writeln!(
            f,
            "interior order     declared {}, measured {}",
            self.declared_interior_order,
            order(self.measured_interior_order)
        )?;
        writeln!(
            f,
            "boundary order     declared {}, measured {}",
            self.declared_boundary_order,
            order(self.measured_boundary_order)
        )?;
        for row in &self.exactness {
            writeln!(
                f,
                "  degree {:<2}       boundary {:.3e}  interior {:.3e}",
                row.degree, row.boundary, row.interior
            )?;
        }
        writeln!(f, "|Q- + Q+^T - B|    {:.3e}", self.sbp_residual)?;
        writeln!(f, "|Q + Q^T - B|      {:.3e}", self.central_residual)?;
        writeln!(f, "|A - A^T|          {:.3e}", self.symmetry_residual)?;
        writeln!(
            f,
            "max eig (A+A^T)/2  {:.3e} ({})",
            self.max_eigenvalue,
            match self.eigen_method {
                EigenMethod::Dense => "eigen-decomposition",
                EigenMethod::Sampled => "sampled quadratic form",
            }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {:<24} {:.3e} <= {:.3e}",
                if c.pass { "pass" } else { "FAIL" },
                c.property,
                c.value,
                c.limit
            )?;
        }
        write!(
            f,
            "result             {}",
            if self.pass() { "pass" } else { "FAIL" }
        )
    }
}

pub fn verify_pair(pair: &DpOperatorPair, tol: &Tolerances) -> VerificationReport {
    let n = pair.n();
    let grid = pair.grid();
    let length = grid.length();
    let unit_idx = (n - 1) as f64;
    let h = &pair.norm().weights;
    let dm = pair.d_minus().to_dense();
    let dp = pair.d_plus().to_dense();
    let hm = DMatrix::from_diagonal(&DVector::from_column_slice(h));
    let qm = &hm * &dm;
    let qp = &hm * &dp;
    let mut b = DMatrix::<f64>::zeros(n, n);
    if !pair.is_periodic() {
        b[(0, 0)] = -1.0;
        b[(n - 1, n - 1)] = 1.0;
    }
    let max_abs = |m: &DMatrix<f64>| m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let sbp_residual = max_abs(&(&qm + qp.transpose() - &b));
    let q = (&qm + &qp) * 0.5;
    let central_residual = max_abs(&(&q + q.transpose() - &b));
    let a = &qp - &qm;
    let symmetry_residual = max_abs(&(&a - a.transpose()));
    let sym = (&a + a.transpose()) * 0.5;
    let (max_eigenvalue, eigen_method) = if n <= tol.dense_limit {
        let eig = SymmetricEigen::new(sym);
        (eig.eigenvalues.max(), EigenMethod::Dense)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..tol.samples {
            let x = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
            let v = (x.transpose() * &sym * &x)[(0, 0)] / x.norm_squared();
            worst = worst.max(v);
        }
        (worst, EigenMethod::Sampled)
    };

    let boundary_row =
        |i: usize| pair.d_minus().is_boundary_row(i) || pair.d_plus().is_boundary_row(i);
    let xi: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|x| (x - grid.x_min()) / length)
        .collect();
    let max_degree = pair.interior_order().max(pair.boundary_order()) + 1;
    let mut exactness = Vec::new();
    for p in 0..=max_degree {
        let f: Vec<f64> = xi.iter().map(|x| x.powi(p as i32)).collect();
        let df: Vec<f64> = xi
            .iter()
            .map(|x| {
                if p == 0 {
                    0.0
                } else {
                    p as f64 * x.powi(p as i32 - 1) / length
                }
            })
            .collect();
        let mut row = ExactnessRow {
            degree: p,
            boundary: 0.0,
            interior: 0.0,
        };
        for op in [pair.d_minus(), pair.d_plus()] {
            let mut out = vec![0.0; n];
            op.apply(&f, &mut out);
            for i in 0..n {
                // Penalty rows only see periodic data consistently.
                if pair.is_periodic() && p > 0 && (i == 0 || i == n - 1) {
                    continue;
                }
                let r = (out[i] - df[i]).abs() * length;
                if boundary_row(i) {
                    row.boundary = row.boundary.max(r);
                } else {
                    row.interior = row.interior.max(r);
                }
            }
        }
        exactness.push(row);
    }
    let exact_limit = tol.exactness * unit_idx;
    let measured = |sel: fn(&ExactnessRow) -> f64| {
        exactness
            .iter()
            .take_while(|r| sel(r) <= exact_limit)
            .last()
            .map(|r| r.degree)
    };
    let measured_interior_order = measured(|r| r.interior);
    let measured_boundary_order = if pair.is_periodic() {
        None
    } else {
        measured(|r| r.boundary)
    };

    let min_weight = h.iter().copied().fold(f64::INFINITY, f64::min);
    let weight_sum: f64 = h.iter().sum();
    let mut checks = vec![
        Check {
            property: "positive norm",
            value: -min_weight,
            limit: 0.0,
            pass: min_weight > 0.0,
        },
        Check {
            property: "quadrature sum",
            value: (weight_sum - length).abs() / length,
            limit: tol.quadrature,
            pass: (weight_sum - length).abs() <= tol.quadrature * length,
        },
    ];
    let interior_worst = exactness
        .iter()
        .filter(|r| r.degree <= pair.interior_order())
        .fold(0.0f64, |a, r| a.max(r.interior));
    let boundary_worst = exactness
        .iter()
        .filter(|r| {
            r.degree
                <= if pair.is_periodic() {
                    0
                } else {
                    pair.boundary_order()
                }
        })
        .fold(0.0f64, |a, r| a.max(r.boundary));
    for (property, value) in [
        ("interior exactness", interior_worst),
        ("boundary exactness", boundary_worst),
    ] {
        checks.push(Check {
            property,
            value,
            limit: exact_limit,
            pass: value <= exact_limit,
        });
    }
    for (property, value, limit) in [
        ("dual-pairing identity", sbp_residual, tol.sbp * unit_idx),
        ("central identity", central_residual, tol.sbp * unit_idx),
        (
            "dissipation symmetry",
            symmetry_residual,
            tol.symmetry * unit_idx,
        ),
        (
            "dissipation sign",
            max_eigenvalue,
            tol.eigenvalue * unit_idx,
        ),
    ] {
        checks.push(Check {
            property,
            value,
            limit,
            pass: value <= limit,
        });
    }

    VerificationReport {
        name: pair.name().to_string(),
        n,
        periodic: pair.is_periodic(),
        min_weight,
        weight_sum,
        length,
        exactness,
        declared_interior_order: pair.interior_order(),
        declared_boundary_order: pair.boundary_order(),
        measured_interior_order,
        measured_boundary_order,
        sbp_residual,
        central_residual,
        symmetry_residual,
        max_eigenvalue,
        eigen_method,
        checks,
    }
}
