//! Operators on 1D grids and tensor-product 2D grids.

use crate::error::{Error, Result};
use crate::grid::{Grid, Grid2D, GridField};

use super::pair::{check_len, DpOperatorPair, OpKind};

/// A grid together with one operator pair per axis and the product norm.
#[derive(Debug, Clone)]
pub struct Space {
    grid: Grid,
    axes: Vec<DpOperatorPair>,
    weights: Vec<f64>,
}

impl Space {
    pub fn one(pair: DpOperatorPair) -> Self {
        let weights = pair.norm().weights.clone();
        Self {
            grid: Grid::One(pair.grid().clone()),
            axes: vec![pair],
            weights,
        }
    }

    /// `x` acts along the first (outer) index, `y` along the contiguous one.
    pub fn two(x: DpOperatorPair, y: DpOperatorPair) -> Self {
        let hx = &x.norm().weights;
        let hy = &y.norm().weights;
        let weights = hx
            .iter()
            .flat_map(|a| hy.iter().map(move |b| a * b))
            .collect();
        Self {
            grid: Grid::Two(Grid2D::new(x.grid().clone(), y.grid().clone())),
            axes: vec![x, y],
            weights,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn pair(&self, axis: usize) -> &DpOperatorPair {
        &self.axes[axis]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dx(&self) -> f64 {
        self.axes[0].grid().dx()
    }

    pub fn is_periodic(&self) -> bool {
        self.axes.iter().all(DpOperatorPair::is_periodic)
    }

    /// Applies an operator along `axis` (0 = x, 1 = y).
    pub fn apply(&self, axis: usize, kind: OpKind, src: &[f64], dst: &mut [f64]) {
        let op = self.axes[axis].op(kind);
        match (self.axes.len(), axis) {
            (1, 0) => op.apply(src, dst),
            (2, 0) => op.apply_blocks(src, dst, self.axes[1].n()),
            (2, 1) => {
                let ny = self.axes[1].n();
                for (s, d) in src.chunks_exact(ny).zip(dst.chunks_exact_mut(ny)) {
                    op.apply(s, d);
                }
            }
            _ => panic!("axis {axis} out of range for a {}D space", self.axes.len()),
        }
    }

    pub fn d(&self, axis: usize, kind: OpKind, src: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; src.len()];
        self.apply(axis, kind, src, &mut out);
        out
    }

    /// `⟨f, g⟩_H`, summed in index order.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        assert_eq!(f.len(), self.len());
        assert_eq!(g.len(), self.len());
        self.weights
            .iter()
            .zip(f.iter().zip(g))
            .fold(0.0, |acc, (h, (a, b))| acc + h * a * b)
    }

    /// `⟨1, f⟩_H`.
    pub fn integral(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.len());
        self.weights
            .iter()
            .zip(f)
            .fold(0.0, |acc, (h, a)| acc + h * a)
    }

    /// `⟨1, |f|⟩_H`.
    pub fn abs_integral(&self, f: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(f)
            .fold(0.0, |acc, (h, a)| acc + h * a.abs())
    }

    pub fn sample(&self, f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
        match &self.grid {
            Grid::One(g) => g.sample(|x| f(&[x])),
            Grid::Two(g) => g.sample(|x, y| f(&[x, y])),
        }
    }

    pub fn area(&self) -> f64 {
        self.axes.iter().map(|p| p.grid().length()).product()
    }
}

/// Applies an operator along one axis of a 2D field, equal to the action of
/// `D ⊗ I_y` (x) or `I_x ⊗ D` (y) on the x-major flat vector.
pub fn apply_2d(space: &Space, axis: usize, kind: OpKind, field: &GridField) -> Result<GridField> {
    if space.dims() != 2 || field.grid.dims() != 2 {
        return Err(Error::Grid("apply_2d needs a 2D space and field".into()));
    }
    if axis > 1 {
        return Err(Error::Grid(format!("axis {axis} out of range")));
    }
    check_len(space.len(), field.values.len())?;
    Ok(GridField {
        values: space.d(axis, kind, &field.values),
        grid: field.grid.clone(),
    })
}

/// `⟨f, g⟩_H` for fields on the space's grid (`H ⊗ H` in 2D).
pub fn inner_product(space: &Space, f: &GridField, g: &GridField) -> Result<f64> {
    check_len(space.len(), f.values.len())?;
    check_len(space.len(), g.values.len())?;
    Ok(space.inner(&f.values, &g.values))
}
