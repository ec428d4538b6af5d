use std::io::{self, Write};

use crate::error::{Error, Result};

/// Axis-aligned tensor grid with `counts[k]` uniformly spaced nodes on
/// `[lower[k], upper[k]]`. Nodes are indexed row-major (last axis fastest),
/// which is lexicographic order of the node coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GridBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
    counts: Vec<usize>,
}

pub const DEFAULT_NODES_PER_AXIS: usize = 128;

impl GridBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, counts: Vec<usize>) -> Result<Self> {
        let dim = lower.len();
        if dim == 0 || upper.len() != dim || counts.len() != dim {
            return Err(Error::InvalidGrid("bounds and counts must share a positive dimension".into()));
        }
        for k in 0..dim {
            if !lower[k].is_finite() || !upper[k].is_finite() || lower[k] >= upper[k] {
                return Err(Error::InvalidGrid(format!(
                    "axis {k}: need finite lower < upper, got [{}, {}]",
                    lower[k], upper[k]
                )));
            }
            if counts[k] < 2 {
                return Err(Error::InvalidGrid(format!("axis {k}: need at least 2 nodes")));
            }
        }
        Ok(Self { lower, upper, counts })
    }

    /// `[lo, hi]^dim` with `m` nodes per axis.
    pub fn cube(dim: usize, lo: f64, hi: f64, m: usize) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim], vec![m; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.upper[axis] - self.lower[axis]) / (self.counts[axis] - 1) as f64
    }

    pub fn max_spacing(&self) -> f64 {
        (0..self.dim()).map(|k| self.spacing(k)).fold(0.0, f64::max)
    }

    /// Node coordinate `i` on `axis`; the last node is exactly `upper`.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        if i + 1 == self.counts[axis] {
            self.upper[axis]
        } else {
            self.lower[axis] + i as f64 * self.spacing(axis)
        }
    }

    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.counts[axis]).map(|i| self.coord(axis, i)).collect()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multi-index of a flat node index.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            idx[k] = flat % self.counts[k];
            flat /= self.counts[k];
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.counts).fold(0, |acc, (&i, &c)| acc * c + i)
    }

    pub fn node(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .iter()
            .enumerate()
            .map(|(k, &i)| self.coord(k, i))
            .collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.node(i))
    }

    /// Whether the box lies in the closed negative (`upper <= 0`) orthant.
    pub fn in_negative_orthant(&self) -> bool {
        self.upper.iter().all(|&u| u <= 0.0)
    }

    /// Whether the box lies in the closed positive (`lower >= 0`) orthant.
    pub fn in_positive_orthant(&self) -> bool {
        self.lower.iter().all(|&l| l >= 0.0)
    }
}

/// Sampled extended-real function on a [`GridBox`]; `f64::INFINITY` marks `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    grid: GridBox,
    values: Vec<f64>,
    convex: bool,
}

impl GridFn {
    pub fn new(grid: GridBox, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| v.is_nan() || *v == f64::NEG_INFINITY) {
            return Err(Error::InvalidGrid("values must be finite or +inf".into()));
        }
        Ok(Self {
            grid,
            values,
            convex: false,
        })
    }

    pub fn from_fn(grid: GridBox, mut f: impl FnMut(&[f64]) -> f64) -> Result<Self> {
        let values = grid.nodes().map(|x| f(&x)).collect();
        Self::new(grid, values)
    }

    pub(crate) fn tagged_convex(mut self) -> Self {
        self.convex = true;
        self
    }

    pub fn grid(&self) -> &GridBox {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn value_at(&self, idx: &[usize]) -> f64 {
        self.values[self.grid.ravel(idx)]
    }

    pub fn has_finite(&self) -> bool {
        self.values.iter().any(|v| v.is_finite())
    }

    /// `max |f - g|` over nodes where both are finite. Grids must match.
    pub fn sup_distance(&self, other: &GridFn) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest violation of `f(x) <= (f(x-h) + f(x+h)) / 2` over all axis
    /// triples of finite values (zero when every triple passes).
    pub fn midpoint_defect(&self) -> f64 {
        let grid = &self.grid;
        let mut worst: f64 = 0.0;
        for flat in 0..grid.len() {
            let idx = grid.unravel(flat);
            for k in 0..grid.dim() {
                if idx[k] == 0 || idx[k] + 1 == grid.counts[k] {
                    continue;
                }
                let mut lo = idx.clone();
                lo[k] -= 1;
                let mut hi = idx.clone();
                hi[k] += 1;
                let (a, m, b) = (self.value_at(&lo), self.values[flat], self.value_at(&hi));
                if a.is_finite() && m.is_finite() && b.is_finite() {
                    worst = worst.max(m - 0.5 * (a + b));
                }
            }
        }
        worst
    }

    /// CSV with header `s_1,...,s_n,value`, nodes in lexicographic order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let header: Vec<String> = (1..=self.grid.dim()).map(|k| format!("s_{k}")).collect();
        writeln!(out, "{},value", header.join(","))?;
        for (flat, v) in self.values.iter().enumerate() {
            for x in self.grid.node(flat) {
                write!(out, "{x},")?;
            }
            if v.is_finite() {
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "inf")?;
            }
        }
        Ok(())
    }
}
