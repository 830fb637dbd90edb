//! Dual-pairing operator pairs `(D₋, D₊, H)`.

use crate::error::{Error, Result};
use crate::grid::{Grid, Grid1D, GridField};

use super::banded::{normalize_row, BandedOp, SparseRow};
use super::coeffs::OperatorCoefficients;
use super::verify::{verify_pair, Tolerances};

/// Diagonal quadrature weights `h_j` (units of length).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalNorm {
    pub weights: Vec<f64>,
}

impl DiagonalNorm {
    pub fn inner(&self, f: &[f64], g: &[f64]) -> Result<f64> {
        check_len(self.weights.len(), f.len())?;
        check_len(self.weights.len(), g.len())?;
        Ok(self
            .weights
            .iter()
            .zip(f.iter().zip(g))
            .fold(0.0, |acc, (h, (a, b))| acc + h * a * b))
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, got })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Minus,
    Plus,
    /// `½(D₋ + D₊)`.
    Central,
    /// `D₊ − D₋`.
    Upwind,
}

#[derive(Debug, Clone)]
pub struct DpOperatorPair {
    name: String,
    grid: Grid1D,
    d_minus: BandedOp,
    d_plus: BandedOp,
    central: BandedOp,
    upwind: BandedOp,
    norm: DiagonalNorm,
    interior_order: usize,
    boundary_order: usize,
    periodic: bool,
}

impl DpOperatorPair {
    /// Builds a pair from explicit operators. No verification is performed;
    /// see [`verify_pair`].
    pub fn from_parts(
        name: impl Into<String>,
        grid: Grid1D,
        d_minus: BandedOp,
        d_plus: BandedOp,
        norm: DiagonalNorm,
        interior_order: usize,
        boundary_order: usize,
        periodic: bool,
    ) -> Result<Self> {
        let n = grid.n();
        check_len(n, d_minus.n())?;
        check_len(n, d_plus.n())?;
        check_len(n, norm.weights.len())?;
        let central = d_minus.combine(0.5, &d_plus, 0.5)?;
        let upwind = d_plus.combine(1.0, &d_minus, -1.0)?;
        Ok(Self {
            name: name.into(),
            grid,
            d_minus,
            d_plus,
            central,
            upwind,
            norm,
            interior_order,
            boundary_order,
            periodic,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn norm(&self) -> &DiagonalNorm {
        &self.norm
    }

    pub fn interior_order(&self) -> usize {
        self.interior_order
    }

    pub fn boundary_order(&self) -> usize {
        self.boundary_order
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn op(&self, kind: OpKind) -> &BandedOp {
        match kind {
            OpKind::Minus => &self.d_minus,
            OpKind::Plus => &self.d_plus,
            OpKind::Central => &self.central,
            OpKind::Upwind => &self.upwind,
        }
    }

    pub fn d_minus(&self) -> &BandedOp {
        &self.d_minus
    }

    pub fn d_plus(&self) -> &BandedOp {
        &self.d_plus
    }

    pub fn apply(&self, kind: OpKind, x: &[f64], y: &mut [f64]) {
        self.op(kind).apply(x, y)
    }

    /// Pair with `D₊` and `D₋` exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::from_parts(
            format!("{}-swapped", self.name),
            self.grid.clone(),
            self.d_plus.clone(),
            self.d_minus.clone(),
            self.norm.clone(),
            self.interior_order,
            self.boundary_order,
            self.periodic,
        )
    }
}

/// Assembles and verifies a pair from dimensionless coefficients.
///
/// `D₋` gets the given upper-left block and interior stencil. The upper rows
/// of `D₊ = H⁻¹(B − (H D₋)ᵀ)` are computed on an auxiliary grid, and their
/// reflection `row i, col j ↦ −row n−1−i, col n−1−j` closes `D₋` at the
/// right edge. `D₊` is then derived from the complete `D₋`.
pub fn assemble_pair(coeffs: &OperatorCoefficients, grid: &Grid1D) -> Result<DpOperatorPair> {
    assemble_pair_with(coeffs, grid, &Tolerances::default())
}

pub fn assemble_pair_with(
    coeffs: &OperatorCoefficients,
    grid: &Grid1D,
    tol: &Tolerances,
) -> Result<DpOperatorPair> {
    coeffs.validate()?;
    let s = coeffs.closure_width;
    let r = coeffs.max_offset();
    let block_cols = coeffs
        .d_minus_boundary
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0);

    // Upper rows of D₊ in units dx = 1.
    let aux_n = 4 * (s + r + block_cols) + 16;
    let aux = dminus_rows(coeffs, aux_n, &[])?;
    let aux_h = norm_weights(coeffs, aux_n, 1.0);
    let aux_plus = derive_plus_rows(&aux, &aux_h, false);
    let offsets: Vec<isize> = coeffs.d_minus_interior_offsets.iter().map(|o| -o).collect();
    let weights: Vec<f64> = coeffs.d_minus_interior_weights.iter().map(|w| -w).collect();
    let mut plus_stencil: Vec<(isize, f64)> = offsets.into_iter().zip(weights).collect();
    plus_stencil.retain(|&(_, w)| w != 0.0);
    plus_stencil.sort_by_key(|&(o, _)| o);
    let limit = aux_n / 2 - r;
    let s_plus = (0..limit)
        .filter(|&i| {
            let rel: Vec<(isize, f64)> = aux_plus[i]
                .iter()
                .map(|&(c, w)| (c as isize - i as isize, w))
                .collect();
            rel != plus_stencil
        })
        .max()
        .map_or(0, |i| i + 1);
    let plus_top = &aux_plus[..s_plus];

    let n = grid.n();
    let reach = plus_top
        .iter()
        .flat_map(|row| row.iter().map(|&(c, _)| c + 1))
        .max()
        .unwrap_or(0)
        .max(block_cols);
    let min_n = 2 * (s.max(s_plus) + r).max(reach);
    if n < min_n {
        return Err(Error::Sizing(format!(
            "operator `{}` needs at least {min_n} points, grid has {n}",
            coeffs.name
        )));
    }

    let idx = 1.0 / grid.dx();
    let mut minus = dminus_rows(coeffs, n, plus_top)?;
    for row in minus.iter_mut() {
        row.iter_mut().for_each(|e| e.1 *= idx);
    }
    let h = norm_weights(coeffs, n, grid.dx());
    let plus = derive_plus_rows(&minus, &h, false);
    let pair = DpOperatorPair::from_parts(
        coeffs.name.clone(),
        grid.clone(),
        BandedOp::from_rows(minus)?,
        BandedOp::from_rows(plus)?,
        DiagonalNorm { weights: h },
        coeffs.interior_order,
        coeffs.boundary_order,
        false,
    )?;
    let report = verify_pair(&pair, tol);
    if !report.pass() {
        return Err(Error::Verification {
            name: coeffs.name.clone(),
            summary: report.failure_summary(),
            report: Box::new(report),
        });
    }
    Ok(pair)
}

/// The embedded order-2 pair on `grid`; `grid.n()` must be at least 8.
pub fn build_order2_pair(grid: &Grid1D) -> Result<DpOperatorPair> {
    assemble_pair(&OperatorCoefficients::dp2(), grid)
}

fn norm_weights(coeffs: &OperatorCoefficients, n: usize, dx: f64) -> Vec<f64> {
    let s = coeffs.closure_width;
    (0..n)
        .map(|j| {
            let k = j.min(n - 1 - j);
            if k < s {
                coeffs.h_boundary[k] * dx
            } else {
                dx
            }
        })
        .collect()
}

/// Dimensionless rows of `D₋`: upper block, interior stencil, and the
/// reflected `plus_top` block at the lower edge. Rows whose stencil would
/// leave the grid are left empty when `plus_top` is empty.
fn dminus_rows(
    coeffs: &OperatorCoefficients,
    n: usize,
    plus_top: &[SparseRow],
) -> Result<Vec<SparseRow>> {
    let mut rows: Vec<SparseRow> = vec![Vec::new(); n];
    for (i, block) in coeffs.d_minus_boundary.iter().enumerate() {
        rows[i] = block.iter().enumerate().map(|(c, &w)| (c, w)).collect();
    }
    let bottom_start = n - plus_top.len();
    for (i, row) in rows
        .iter_mut()
        .enumerate()
        .take(bottom_start)
        .skip(coeffs.closure_width)
    {
        let cols: Option<SparseRow> = coeffs
            .d_minus_interior_offsets
            .iter()
            .zip(&coeffs.d_minus_interior_weights)
            .map(|(&o, &w)| {
                let c = i as isize + o;
                (c >= 0 && (c as usize) < n).then_some((c as usize, w))
            })
            .collect();
        match cols {
            Some(c) => *row = c,
            None if plus_top.is_empty() => {}
            None => {
                return Err(Error::Sizing(format!(
                    "interior stencil of `{}` leaves the grid at row {i}",
                    coeffs.name
                )))
            }
        }
    }
    for (i, prow) in plus_top.iter().enumerate() {
        rows[n - 1 - i] = prow.iter().map(|&(c, w)| (n - 1 - c, -w)).collect();
    }
    for row in rows.iter_mut() {
        normalize_row(row);
    }
    Ok(rows)
}

/// Rows of `H⁻¹(B − (H D₋)ᵀ)`, with `B = 0` when `periodic`.
fn derive_plus_rows(minus: &[SparseRow], h: &[f64], periodic: bool) -> Vec<SparseRow> {
    let n = minus.len();
    let mut plus: Vec<SparseRow> = vec![Vec::new(); n];
    for (j, row) in minus.iter().enumerate() {
        for &(c, w) in row {
            plus[c].push((j, -h[j] * w / h[c]));
        }
    }
    if !periodic {
        plus[0].push((0, -1.0 / h[0]));
        plus[n - 1].push((n - 1, 1.0 / h[n - 1]));
    }
    for row in plus.iter_mut() {
        normalize_row(row);
    }
    plus
}

/// Weak periodic closure: `D̃± = D± + H⁻¹ B_N` with
/// `B_N f = ½(f₁ − f_N) (e₁ + e_N)`.
pub fn make_periodic(pair: &DpOperatorPair) -> Result<DpOperatorPair> {
    if pair.periodic {
        return Err(Error::Config(format!(
            "pair `{}` is already periodic",
            pair.name
        )));
    }
    let n = pair.n();
    let h = &pair.norm.weights;
    let penalize = |op: &BandedOp| -> Result<BandedOp> {
        let mut rows = op.rows();
        for i in [0, n - 1] {
            let a = 0.5 / h[i];
            rows[i].push((0, a));
            rows[i].push((n - 1, -a));
        }
        BandedOp::from_rows(rows)
    };
    DpOperatorPair::from_parts(
        pair.name.clone(),
        pair.grid.clone(),
        penalize(&pair.d_minus)?,
        penalize(&pair.d_plus)?,
        pair.norm.clone(),
        pair.interior_order,
        pair.boundary_order,
        true,
    )
}

/// `B_N f` for the periodic penalty.
pub fn periodic_penalty(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n > 0 {
        let jump = 0.5 * (f[0] - f[n - 1]);
        out[0] += jump;
        out[n - 1] += jump;
    }
    out
}

/// Applies one member of the pair (or their average) to a 1D field.
pub fn apply_1d(pair: &DpOperatorPair, kind: OpKind, field: &GridField) -> Result<GridField> {
    check_len(pair.n(), field.values.len())?;
    match &field.grid {
        Grid::One(g) if g.n() == pair.n() => {}
        _ => {
            return Err(Error::Grid("field is not on the operator's 1D grid".into()));
        }
    }
    let mut out = vec![0.0; pair.n()];
    pair.apply(kind, &field.values, &mut out);
    Ok(GridField {
        values: out,
        grid: field.grid.clone(),
    })
}
