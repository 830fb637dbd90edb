//! Dimensionless operator coefficients and their plain-text file format.
//!
//! ```text
//! name = dp2
//! interior_order = 2
//! boundary_order = 1
//! closure_width = 2
//! h_boundary = 1/4 5/4
//! d_minus_boundary = -1 1 ; -1 1
//! d_minus_interior_offsets = -2 -1 0
//! d_minus_interior_weights = 1/2 -2 3/2
//! ```
//!
//! Rows of `d_minus_boundary` are separated by `;` or written on indented
//! continuation lines. Numbers may be separated by spaces or commas and may
//! be written as rationals. `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCoefficients {
    pub name: String,
    pub interior_order: usize,
    pub boundary_order: usize,
    pub closure_width: usize,
    /// Boundary weights of `H` before scaling by `dx`.
    pub h_boundary: Vec<f64>,
    /// Upper-left rows of `D₋` before scaling by `1/dx`; row `i` holds
    /// columns `0..row.len()`.
    pub d_minus_boundary: Vec<Vec<f64>>,
    pub d_minus_interior_offsets: Vec<isize>,
    pub d_minus_interior_weights: Vec<f64>,
}

impl OperatorCoefficients {
    /// The order-2 dual-pairing backward operator with its diagonal norm.
    pub fn dp2() -> Self {
        Self {
            name: "dp2".into(),
            interior_order: 2,
            boundary_order: 1,
            closure_width: 2,
            h_boundary: vec![0.25, 1.25],
            d_minus_boundary: vec![vec![-1.0, 1.0], vec![-1.0, 1.0]],
            d_minus_interior_offsets: vec![-2, -1, 0],
            d_minus_interior_weights: vec![0.5, -2.0, 1.5],
        }
    }

    /// The classical second-order central operator. Used as both members
    /// of the pair it carries no dissipation.
    pub fn central2() -> Self {
        Self {
            name: "central2".into(),
            interior_order: 2,
            boundary_order: 1,
            closure_width: 1,
            h_boundary: vec![0.5],
            d_minus_boundary: vec![vec![-1.0, 1.0]],
            d_minus_interior_offsets: vec![-1, 0, 1],
            d_minus_interior_weights: vec![-0.5, 0.0, 0.5],
        }
    }

    pub fn builtin(id: &str) -> Option<Self> {
        match id {
            "dp2" => Some(Self::dp2()),
            "central2" => Some(Self::central2()),
            _ => None,
        }
    }

    pub fn max_offset(&self) -> usize {
        self.d_minus_interior_offsets
            .iter()
            .map(|o| o.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Structural checks that do not need a grid.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Coefficients(format!("{}: {m}", self.name)));
        let s = self.closure_width;
        if s == 0 {
            return bad("closure_width must be positive".into());
        }
        if self.h_boundary.len() != s {
            return bad(format!(
                "h_boundary has {} entries, expected {s}",
                self.h_boundary.len()
            ));
        }
        if self.d_minus_boundary.len() != s {
            return bad(format!(
                "d_minus_boundary has {} rows, expected {s}",
                self.d_minus_boundary.len()
            ));
        }
        if let Some(h) = self
            .h_boundary
            .iter()
            .find(|h| !(**h > 0.0 && h.is_finite()))
        {
            return bad(format!("norm weight {h} is not positive"));
        }
        if self.d_minus_interior_offsets.len() != self.d_minus_interior_weights.len() {
            return bad("interior offsets and weights differ in length".into());
        }
        if self.d_minus_interior_offsets.is_empty() {
            return bad("empty interior stencil".into());
        }
        let scale: f64 = self.d_minus_interior_weights.iter().map(|w| w.abs()).sum();
        let sum: f64 = self.d_minus_interior_weights.iter().sum();
        if sum.abs() > 1e-13 * scale.max(1.0) {
            return bad(format!(
                "exactness: interior stencil weights sum to {sum:e}, constants are not mapped to zero"
            ));
        }
        for (i, row) in self.d_minus_boundary.iter().enumerate() {
            let scale: f64 = row.iter().map(|w| w.abs()).sum();
            let sum: f64 = row.iter().sum();
            if sum.abs() > 1e-13 * scale.max(1.0) {
                return bad(format!("exactness: boundary row {i} sums to {sum:e}"));
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, Path::new("<coefficients>"))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_named(&text, path)
    }

    fn parse_named(text: &str, path: &Path) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((k, v)) = line.split_once('=') {
                let key = k.trim().to_string();
                if fields.contains_key(&key) {
                    return Err(perr(idx + 1, format!("duplicate key `{key}`")));
                }
                fields.insert(key.clone(), (idx + 1, v.trim().to_string()));
                current = Some(key);
            } else if let Some(key) = &current {
                let entry = fields.get_mut(key).expect("current key present");
                if !entry.1.is_empty() {
                    entry.1.push(';');
                }
                entry.1.push_str(line);
            } else {
                return Err(perr(idx + 1, "expected `key = value`".into()));
            }
        }
        let take = |key: &str| -> Result<(usize, String)> {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| perr(0, format!("missing key `{key}`")))
        };
        let int = |key: &str| -> Result<usize> {
            let (line, v) = take(key)?;
            v.parse()
                .map_err(|_| perr(line, format!("`{key}` must be a non-negative integer")))
        };
        let reals = |key: &str| -> Result<Vec<f64>> {
            let (line, v) = take(key)?;
            parse_reals(&v).map_err(|m| perr(line, m))
        };
        let (name_line, name) = take("name")?;
        if name.is_empty() {
            return Err(perr(name_line, "empty name".into()));
        }
        let (rows_line, rows_text) = take("d_minus_boundary")?;
        let d_minus_boundary = rows_text
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(parse_reals)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| perr(rows_line, m))?;
        let (off_line, off_text) = take("d_minus_interior_offsets")?;
        let d_minus_interior_offsets = tokens(&off_text)
            .map(|t| {
                normalize_minus(t)
                    .parse::<isize>()
                    .map_err(|_| format!("bad integer offset `{t}`"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| perr(off_line, m))?;
        let coeffs = Self {
            name,
            interior_order: int("interior_order")?,
            boundary_order: int("boundary_order")?,
            closure_width: int("closure_width")?,
            h_boundary: reals("h_boundary")?,
            d_minus_boundary,
            d_minus_interior_offsets,
            d_minus_interior_weights: reals("d_minus_interior_weights")?,
        };
        coeffs.validate()?;
        Ok(coeffs)
    }

    /// Serializes in the same format `parse` reads.
    pub fn to_text(&self) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:?}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let rows = self
            .d_minus_boundary
            .iter()
            .map(|r| join(r))
            .collect::<Vec<_>>()
            .join(" ; ");
        let offsets = self
            .d_minus_interior_offsets
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "name = {}\ninterior_order = {}\nboundary_order = {}\nclosure_width = {}\n\
             h_boundary = {}\nd_minus_boundary = {}\nd_minus_interior_offsets = {}\n\
             d_minus_interior_weights = {}\n",
            self.name,
            self.interior_order,
            self.boundary_order,
            self.closure_width,
            join(&self.h_boundary),
            rows,
            offsets,
            join(&self.d_minus_interior_weights)
        )
    }
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

fn normalize_minus(t: &str) -> String {
    t.replace(['\u{2212}', '\u{2013}'], "-")
}

/// Parses a decimal or rational literal such as `-8/5`.
pub fn parse_real(t: &str) -> std::result::Result<f64, String> {
    let t = normalize_minus(t.trim());
    let value = match t.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad number `{t}`"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad number `{t}`"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in `{t}`"));
            }
            num / den
        }
        None => t.parse().map_err(|_| format!("bad number `{t}`"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("non-finite number `{t}`"))
    }
}

fn parse_reals(s: &str) -> std::result::Result<Vec<f64>, String> {
    tokens(s).map(parse_real).collect()
}
