//! Uniform grids and grid-sampled fields.

use crate::error::{Error, Result};

/// Uniform 1D grid on `[x_min, x_min + length]`, both end points included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    n: usize,
    x_min: f64,
    length: f64,
    dx: f64,
}

impl Grid1D {
    pub fn new(n: usize, x_min: f64, length: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Grid(format!("need at least 2 points, got {n}")));
        }
        if !(length > 0.0 && length.is_finite() && x_min.is_finite()) {
            return Err(Error::Grid(format!(
                "invalid extent x_min={x_min}, length={length}"
            )));
        }
        Ok(Self {
            n,
            x_min,
            length,
            dx: length / (n - 1) as f64,
        })
    }

    /// Grid on the unit interval `[0, 1]`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 1.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_min + self.length
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Node `j` (0-based). The last node is pinned to `x_max` exactly.
    pub fn x(&self, j: usize) -> f64 {
        if j + 1 == self.n {
            self.x_max()
        } else {
            self.x_min + j as f64 * self.dx
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..self.n).map(|j| f(self.x(j))).collect()
    }
}

/// Tensor-product grid. Flat index `k = ix * ny + iy` (x-major).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub gx: Grid1D,
    pub gy: Grid1D,
}

impl Grid2D {
    pub fn new(gx: Grid1D, gy: Grid1D) -> Self {
        Self { gx, gy }
    }

    pub fn square(n: usize, x_min: f64, length: f64) -> Result<Self> {
        let g = Grid1D::new(n, x_min, length)?;
        Ok(Self::new(g.clone(), g))
    }

    pub fn nx(&self) -> usize {
        self.gx.n()
    }

    pub fn ny(&self) -> usize {
        self.gy.n()
    }

    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.ny() + iy
    }

    pub fn coords(&self, k: usize) -> (usize, usize) {
        (k / self.ny(), k % self.ny())
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for ix in 0..self.nx() {
            let x = self.gx.x(ix);
            for iy in 0..self.ny() {
                out.push(f(x, self.gy.x(iy)));
            }
        }
        out
    }
}

/// Either kind of grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    One(Grid1D),
    Two(Grid2D),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::One(g) => g.n(),
            Grid::Two(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> usize {
        match self {
            Grid::One(_) => 1,
            Grid::Two(_) => 2,
        }
    }

    /// Spacing of the first axis; the time-step rules are stated in it.
    pub fn dx(&self) -> f64 {
        match self {
            Grid::One(g) => g.dx(),
            Grid::Two(g) => g.gx.dx(),
        }
    }
}

/// Values sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub values: Vec<f64>,
    pub grid: Grid,
}

impl GridField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::SizeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { values, grid })
    }

    pub fn from_fn_1d(grid: &Grid1D, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: grid.sample(f),
            grid: Grid::One(grid.clone()),
        }
    }

    pub fn from_fn_2d(grid: &Grid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            values: grid.sample(f),
            grid: Grid::Two(grid.clone()),
        }
    }
}
