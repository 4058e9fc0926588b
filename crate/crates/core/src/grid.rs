//! Uniform cell-centered partition of an interval.

use crate::error::{Error, Result};

/// Cell-centered grid on `(a, b)` with midpoint quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    h: f64,
    centers: Vec<f64>,
}

impl Grid {
    pub fn new(n_cells: usize, a: f64, b: f64) -> Result<Self> {
        if n_cells < 2 {
            return Err(Error::Config(format!(
                "grid needs at least 2 cells, got {n_cells}"
            )));
        }
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::Config(format!("empty interval ({a}, {b})")));
        }
        let h = (b - a) / n_cells as f64;
        let centers = (0..n_cells).map(|i| a + (i as f64 + 0.5) * h).collect();
        Ok(Self { a, b, h, centers })
    }

    /// Sub-grid made of the cells `range` of `self`; its endpoints are the outer cell faces.
    pub fn subgrid(&self, range: std::ops::Range<usize>) -> Result<Self> {
        if range.end > self.n_cells() || range.start >= range.end {
            return Err(Error::Config(format!(
                "cell range {range:?} outside grid of {} cells",
                self.n_cells()
            )));
        }
        let n = range.end - range.start;
        if n < 2 {
            return Err(Error::Config(format!(
                "sub-grid needs at least 2 cells, got {n}"
            )));
        }
        let a = self.a + range.start as f64 * self.h;
        let centers = self.centers[range.clone()].to_vec();
        Ok(Self {
            a,
            b: self.a + range.end as f64 * self.h,
            h: self.h,
            centers,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.centers.len()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// |Ω| as seen by the quadrature, `h * n_cells`.
    pub fn measure(&self) -> f64 {
        self.h * self.n_cells() as f64
    }

    /// Midpoint quadrature of a cell-sampled function.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.h * values.iter().sum::<f64>()
    }

    /// Midpoint quadrature restricted to cells where `mask` is set.
    pub fn integrate_masked(&self, values: &[f64], mask: &[bool]) -> f64 {
        self.h
            * values
                .iter()
                .zip(mask)
                .filter(|(_, &keep)| keep)
                .map(|(v, _)| v)
                .sum::<f64>()
    }
}

/// Builds a [`Grid`]; `n_cells >= 2` and `b > a` are required.
pub fn build_grid(n_cells: usize, a: f64, b: f64) -> Result<Grid> {
    Grid::new(n_cells, a, b)
}
