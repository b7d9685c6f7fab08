//! Channel grids and sampled fields.
//!
//! The channel is periodic in `x` with period `x_period` (default 2, so that
//! every mode `cos(mπx)` with integer `m` is periodic) and wall-bounded in
//! `y ∈ [0, y_extent]`. Wall rows are part of the grid, so boundary traces
//! never need interpolation.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_X_PERIOD: f64 = 2.0;
pub const DEFAULT_Y_EXTENT: f64 = 1.0;
/// Scalars, vectors and symmetric 2×2 tensors `(F₁₁, F₁₂, F₂₂)`.
pub const MAX_COMPONENTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGrid {
    nx: usize,
    ny: usize,
    x_period: f64,
    y_extent: f64,
}

impl ChannelGrid {
    /// Uniform grid with `nx` periodic points in `x` and `ny` points in `y`,
    /// including both walls.
    pub fn new(nx: usize, ny: usize, x_period: f64, y_extent: f64) -> Result<Self> {
        if nx < 4 || !nx.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "nx = {nx} must be a power of two and at least 4"
            )));
        }
        if ny < 3 {
            return Err(Error::InvalidGrid(format!("ny = {ny} must be at least 3")));
        }
        if !(x_period > 0.0 && x_period.is_finite()) || !(y_extent > 0.0 && y_extent.is_finite())
        {
            return Err(Error::InvalidGrid(format!(
                "extents must be positive (x_period = {x_period}, y_extent = {y_extent})"
            )));
        }
        Ok(Self {
            nx,
            ny,
            x_period,
            y_extent,
        })
    }

    /// Channel of period 2 and unit height.
    pub fn channel(nx: usize, ny: usize) -> Result<Self> {
        Self::new(nx, ny, DEFAULT_X_PERIOD, DEFAULT_Y_EXTENT)
    }

    /// Square-cell channel grid: `ny = nx/2 + 1`, so `h_x = h_y = 2/nx`.
    pub fn square(nx: usize) -> Result<Self> {
        Self::channel(nx, nx / 2 + 1)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn x_period(&self) -> f64 {
        self.x_period
    }

    pub fn y_extent(&self) -> f64 {
        self.y_extent
    }

    pub fn hx(&self) -> f64 {
        self.x_period / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        self.y_extent / (self.ny - 1) as f64
    }

    /// Coarsest of the two spacings; the smallest separation the estimators accept.
    pub fn resolution(&self) -> f64 {
        self.hx().max(self.hy())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_period * i as f64 / self.nx as f64
    }

    /// `y_j`; the last row is exactly `y_extent`.
    pub fn y(&self, j: usize) -> f64 {
        if j + 1 == self.ny {
            self.y_extent
        } else {
            self.y_extent * j as f64 / (self.ny - 1) as f64
        }
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Index of the grid row at height `y`, if `y` lies on a grid line.
    pub fn row_of(&self, y: f64) -> Option<usize> {
        let t = y / self.hy();
        let j = t.round();
        if j < 0.0 || j > (self.ny - 1) as f64 {
            return None;
        }
        ((t - j).abs() <= 1e-9).then_some(j as usize)
    }
}

/// Scalar or two-component field sampled on a [`ChannelGrid`].
///
/// Values are stored per component, row-major in `y` then `x`
/// (`index = j * nx + i`). Only `nx` points are stored per row; node `nx`
/// is identified with node 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelField {
    grid: ChannelGrid,
    components: Vec<Vec<f64>>,
}

impl ChannelField {
    pub fn new(grid: ChannelGrid, components: Vec<Vec<f64>>) -> Result<Self> {
        if components.is_empty() || components.len() > MAX_COMPONENTS {
            return Err(Error::ShapeMismatch(format!(
                "expected 1 to {MAX_COMPONENTS} components, got {}",
                components.len()
            )));
        }
        for (c, values) in components.iter().enumerate() {
            if values.len() != grid.len() {
                return Err(Error::ShapeMismatch(format!(
                    "component {c} has {} values, grid has {} nodes",
                    values.len(),
                    grid.len()
                )));
            }
        }
        Ok(Self { grid, components })
    }

    pub fn scalar(grid: ChannelGrid, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, vec![values])
    }

    pub fn vector(grid: ChannelGrid, u1: Vec<f64>, u2: Vec<f64>) -> Result<Self> {
        Self::new(grid, vec![u1, u2])
    }

    pub fn zeros(grid: ChannelGrid, components: usize) -> Self {
        Self {
            grid,
            components: vec![vec![0.0; grid.len()]; components.clamp(1, MAX_COMPONENTS)],
        }
    }

    /// Samples `f(x, y)` at every node.
    pub fn from_fn(grid: ChannelGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny() {
            let y = grid.y(j);
            for i in 0..grid.nx() {
                values.push(f(grid.x(i), y));
            }
        }
        Self {
            grid,
            components: vec![values],
        }
    }

    /// Samples a vector field `(x, y) ↦ (u₁, u₂)` at every node.
    pub fn from_fn2(grid: ChannelGrid, f: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        let mut u1 = Vec::with_capacity(grid.len());
        let mut u2 = Vec::with_capacity(grid.len());
        for j in 0..grid.ny() {
            let y = grid.y(j);
            for i in 0..grid.nx() {
                let (a, b) = f(grid.x(i), y);
                u1.push(a);
                u2.push(b);
            }
        }
        Self {
            grid,
            components: vec![u1, u2],
        }
    }

    pub fn grid(&self) -> &ChannelGrid {
        &self.grid
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.components.len() == 1
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.components[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.components[c]
    }

    /// Copy of one component as a scalar field.
    pub fn component_field(&self, c: usize) -> ChannelField {
        ChannelField {
            grid: self.grid,
            components: vec![self.components[c].clone()],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.components[0]
    }

    #[inline]
    pub fn get(&self, c: usize, i: usize, j: usize) -> f64 {
        self.components[c][self.grid.index(i, j)]
    }

    pub fn row(&self, c: usize, j: usize) -> &[f64] {
        let nx = self.grid.nx();
        &self.components[c][j * nx..(j + 1) * nx]
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Pointwise map of every component.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ChannelField {
        ChannelField {
            grid: self.grid,
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&v| f(v)).collect())
                .collect(),
        }
    }

    /// Pointwise combination of two fields of identical shape.
    pub fn zip_with(
        &self,
        other: &ChannelField,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<ChannelField> {
        if self.grid != other.grid || self.n_components() != other.n_components() {
            return Err(Error::ShapeMismatch(
                "fields live on different grids or have different component counts".into(),
            ));
        }
        Ok(ChannelField {
            grid: self.grid,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
                .collect(),
        })
    }

    /// Domain average: uniform weights in `x`, trapezoidal in `y`.
    pub fn mean(&self, c: usize) -> f64 {
        let g = &self.grid;
        let mut total = 0.0;
        for j in 0..g.ny() {
            let w = if j == 0 || j + 1 == g.ny() { 0.5 } else { 1.0 };
            total += w * self.row(c, j).iter().sum::<f64>();
        }
        total / (g.nx() * (g.ny() - 1)) as f64
    }

    /// Writes the field as CSV with header `x,y,component,value`, rows ordered
    /// by `y`, then `x`, then component; values printed with 17 significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["x", "y", "component", "value"])?;
        let g = &self.grid;
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                for c in 0..self.n_components() {
                    w.write_record([
                        format!("{:.16e}", g.x(i)),
                        format!("{:.16e}", g.y(j)),
                        c.to_string(),
                        format!("{:.16e}", self.get(c, i, j)),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    /// Reads a field written by [`ChannelField::write_csv`] back onto `grid`.
    pub fn read_csv<R: Read>(reader: R, grid: ChannelGrid) -> Result<ChannelField> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["x", "y", "component", "value"] {
            return Err(Error::Parse(format!("unexpected CSV header {headers:?}")));
        }
        let mut components: Vec<Vec<Option<f64>>> = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let field = |k: usize| -> Result<&str> {
                record
                    .get(k)
                    .ok_or_else(|| Error::Parse(format!("row {line}: missing column {k}")))
            };
            let parse = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {line}: {e}")))
            };
            let x = parse(field(0)?)?;
            let y = parse(field(1)?)?;
            let c: usize = field(2)?
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("row {line}: {e}")))?;
            let v = parse(field(3)?)?;
            if c >= MAX_COMPONENTS {
                return Err(Error::Parse(format!("row {line}: component {c} out of range")));
            }
            let i = (x / grid.hx()).round();
            let j = grid
                .row_of(y)
                .ok_or_else(|| Error::Parse(format!("row {line}: y = {y} is off-grid")))?;
            if (x / grid.hx() - i).abs() > 1e-9 || i < 0.0 || i as usize >= grid.nx() {
                return Err(Error::Parse(format!("row {line}: x = {x} is off-grid")));
            }
            while components.len() <= c {
                components.push(vec![None; grid.len()]);
            }
            components[c][grid.index(i as usize, j)] = Some(v);
        }
        let components = components
            .into_iter()
            .enumerate()
            .map(|(c, vals)| {
                vals.into_iter()
                    .collect::<Option<Vec<f64>>>()
                    .ok_or_else(|| Error::Parse(format!("component {c} has missing nodes")))
            })
            .collect::<Result<Vec<_>>>()?;
        ChannelField::new(grid, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacings() {
        let g = ChannelGrid::channel(4, 3).unwrap();
        assert_eq!(g.hx(), 0.5);
        assert_eq!(g.hy(), 0.5);
        let g = ChannelGrid::channel(256, 129).unwrap();
        assert_eq!(g.hx(), 2.0 / 256.0);
        assert_eq!(g.y(0), 0.0);
        assert_eq!(g.y(128), 1.0);
    }

    #[test]
    fn wall_rows_are_exact_for_awkward_ny() {
        let g = ChannelGrid::new(8, 301, 2.0, 0.7).unwrap();
        assert_eq!(g.y(0), 0.0);
        assert_eq!(g.y(300), 0.7);
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(ChannelGrid::channel(3, 3).is_err());
        assert!(ChannelGrid::channel(12, 3).is_err());
        assert!(ChannelGrid::channel(2, 3).is_err());
        assert!(ChannelGrid::channel(8, 2).is_err());
        assert!(ChannelGrid::new(8, 5, 0.0, 1.0).is_err());
        assert!(ChannelGrid::new(8, 5, 2.0, -1.0).is_err());
    }

    #[test]
    fn shape_is_checked() {
        let g = ChannelGrid::channel(4, 3).unwrap();
        assert!(ChannelField::scalar(g, vec![0.0; 11]).is_err());
        assert!(ChannelField::new(g, vec![]).is_err());
        assert!(ChannelField::new(g, vec![vec![0.0; 12]; 5]).is_err());
    }

    #[test]
    fn mean_of_linear_profile() {
        let g = ChannelGrid::square(16).unwrap();
        let f = ChannelField::from_fn(g, |_, y| y);
        assert!((f.mean(0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn csv_header_and_order() {
        let g = ChannelGrid::channel(4, 3).unwrap();
        let f = ChannelField::from_fn2(g, |x, y| (x, y));
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,component,value"));
        assert_eq!(
            lines.next(),
            Some("0.0000000000000000e0,0.0000000000000000e0,0,0.0000000000000000e0")
        );
        assert_eq!(text.lines().count(), 1 + 2 * 12);
    }
}
