//! Square operators made of a constant interior stencil plus explicit
//! boundary rows.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Sparse row: `(column, weight)` pairs sorted by column, no zero weights.
pub type SparseRow = Vec<(usize, f64)>;

pub(crate) fn normalize_row(row: &mut SparseRow) {
    row.sort_by_key(|&(c, _)| c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for &(c, w) in row.iter() {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += w,
            _ => out.push((c, w)),
        }
    }
    out.retain(|&(_, w)| w != 0.0);
    *row = out;
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandedOp {
    n: usize,
    top: Vec<SparseRow>,
    bottom: Vec<SparseRow>,
    offsets: Vec<isize>,
    weights: Vec<f64>,
    /// Interior stencil laid out densely from offset `lo`.
    lo: isize,
    dense: Vec<f64>,
}

impl BandedOp {
    /// Compresses full sparse rows. The interior stencil is read off the
    /// middle row; every row that differs from it near an edge becomes an
    /// explicit boundary row.
    pub fn from_rows(mut rows: Vec<SparseRow>) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::Sizing(format!(
                "operator needs at least 3 rows, got {n}"
            )));
        }
        for row in rows.iter_mut() {
            normalize_row(row);
            if row.iter().any(|&(c, _)| c >= n) {
                return Err(Error::Sizing("column index out of range".into()));
            }
        }
        let mid = n / 2;
        let relative = |i: usize| -> Vec<(isize, f64)> {
            rows[i]
                .iter()
                .map(|&(c, w)| (c as isize - i as isize, w))
                .collect()
        };
        let stencil = relative(mid);
        let top_len = (0..mid)
            .filter(|&i| relative(i) != stencil)
            .max()
            .map_or(0, |i| i + 1);
        let bottom_start = (mid + 1..n)
            .filter(|&i| relative(i) != stencil)
            .min()
            .unwrap_or(n);
        let bottom = rows.split_off(bottom_start);
        rows.truncate(top_len);
        let lo = stencil.first().map_or(0, |&(o, _)| o);
        let hi = stencil.last().map_or(0, |&(o, _)| o);
        let mut dense = vec![0.0; (hi - lo + 1) as usize];
        for &(o, w) in &stencil {
            dense[(o - lo) as usize] = w;
        }
        Ok(Self {
            n,
            top: rows,
            bottom,
            offsets: stencil.iter().map(|&(o, _)| o).collect(),
            weights: stencil.iter().map(|&(_, w)| w).collect(),
            lo,
            dense,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_rows(&self) -> usize {
        self.top.len()
    }

    pub fn bottom_rows(&self) -> usize {
        self.bottom.len()
    }

    pub fn interior_stencil(&self) -> (&[isize], &[f64]) {
        (&self.offsets, &self.weights)
    }

    pub fn is_boundary_row(&self, i: usize) -> bool {
        i < self.top.len() || i >= self.n - self.bottom.len()
    }

    pub fn row(&self, i: usize) -> SparseRow {
        assert!(i < self.n, "row {i} out of range");
        let b0 = self.n - self.bottom.len();
        if i < self.top.len() {
            self.top[i].clone()
        } else if i >= b0 {
            self.bottom[i - b0].clone()
        } else {
            self.offsets
                .iter()
                .zip(&self.weights)
                .map(|(&o, &w)| ((i as isize + o) as usize, w))
                .collect()
        }
    }

    pub fn rows(&self) -> Vec<SparseRow> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.row(i)
            .iter()
            .find(|&&(c, _)| c == j)
            .map_or(0.0, |&(_, w)| w)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (c, w) in self.row(i) {
                m[(i, c)] = w;
            }
        }
        m
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &BandedOp, b: f64) -> Result<BandedOp> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let rows = (0..self.n)
            .map(|i| {
                let mut row: SparseRow = self.row(i).into_iter().map(|(c, w)| (c, a * w)).collect();
                row.extend(other.row(i).into_iter().map(|(c, w)| (c, b * w)));
                row
            })
            .collect();
        BandedOp::from_rows(rows)
    }

    /// `y = self * x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_blocks(x, y, 1);
    }

    /// Applies the operator to a vector whose entries are contiguous
    /// blocks of length `m`: block `i` of `y` is `Σ_j a_ij` times block `j`
    /// of `x`. With `m = n_y` this is the action of `D ⊗ I_y` on an
    /// x-major 2D field.
    pub fn apply_blocks(&self, x: &[f64], y: &mut [f64], m: usize) {
        let n = self.n;
        assert_eq!(x.len(), n * m, "input length");
        assert_eq!(y.len(), n * m, "output length");
        let b0 = n - self.bottom.len();
        if m == 1 {
            for (i, row) in self.top.iter().enumerate() {
                y[i] = row.iter().map(|&(c, w)| w * x[c]).sum();
            }
            let top = self.top.len();
            if top < b0 {
                let start = (top as isize + self.lo) as usize;
                let windows = x[start..].windows(self.dense.len());
                for (yi, win) in y[top..b0].iter_mut().zip(windows) {
                    *yi = win.iter().zip(&self.dense).map(|(a, w)| a * w).sum();
                }
            }
            for (r, row) in self.bottom.iter().enumerate() {
                y[b0 + r] = row.iter().map(|&(c, w)| w * x[c]).sum();
            }
            return;
        }
        let block_row = |y: &mut [f64], i: usize, row: &mut dyn Iterator<Item = (usize, f64)>| {
            let dst = &mut y[i * m..(i + 1) * m];
            dst.fill(0.0);
            for (c, w) in row {
                let src = &x[c * m..(c + 1) * m];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += w * s;
                }
            }
        };
        for (i, row) in self.top.iter().enumerate() {
            block_row(y, i, &mut row.iter().copied());
        }
        for i in self.top.len()..b0 {
            let mut it = self
                .offsets
                .iter()
                .zip(&self.weights)
                .map(|(&o, &w)| ((i as isize + o) as usize, w));
            block_row(y, i, &mut it);
        }
        for (r, row) in self.bottom.iter().enumerate() {
            block_row(y, b0 + r, &mut row.iter().copied());
        }
    }
}
