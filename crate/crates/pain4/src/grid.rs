//! Sampling grids and sampled curves.

use crate::error::Error;
use serde::Serialize;

/// A uniform sampling grid on `[xmin, xmax]` with `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    xmin: f64,
    xmax: f64,
    n: usize,
}

impl GridSpec {
    pub fn new(xmin: f64, xmax: f64, n: usize) -> Result<Self, Error> {
        if !(xmin < xmax) || n < 2 || !xmin.is_finite() || !xmax.is_finite() {
            return Err(Error::BadGridSpec { xmin, xmax, n });
        }
        Ok(GridSpec { xmin, xmax, n })
    }

    /// Working grid used by validity checks and the verification suite:
    /// 601 uniform points on [-6, 6].
    pub fn working() -> Self {
        GridSpec { xmin: -6.0, xmax: 6.0, n: 601 }
    }

    /// Default export grid: 501 uniform points on [-5, 5].
    pub fn export_default() -> Self {
        GridSpec { xmin: -5.0, xmax: 5.0, n: 501 }
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn xmax(&self) -> f64 {
        self.xmax
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        let h = (self.xmax - self.xmin) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.xmin + h * i as f64).collect()
    }
}

/// A sampled curve `x -> value` on strictly increasing abscissas.
///
/// NaN and infinite values are refused at construction, so a `GridFunction`
/// is always exportable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction {
    #[serde(rename = "x")]
    xs: Vec<f64>,
    #[serde(rename = "value")]
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self, Error> {
        if xs.len() != values.len() || xs.is_empty() {
            return Err(Error::BadGridValues);
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::GridNotIncreasing);
        }
        if xs.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::BadGridValues);
        }
        Ok(GridFunction { xs, values })
    }

    /// Samples `f` on the grid.
    pub fn sample<F>(grid: &GridSpec, mut f: F) -> Result<Self, Error>
    where
        F: FnMut(f64) -> Result<f64, Error>,
    {
        let xs = grid.points();
        let mut values = Vec::with_capacity(xs.len());
        for &x in &xs {
            values.push(f(x)?);
        }
        GridFunction::new(xs, values)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}
