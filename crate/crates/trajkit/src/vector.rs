//! Time-evolving sample data: an N x d matrix of position (or velocity,
//! acceleration) samples with per-axis accessors.

use ndarray::{Array1, Array2, ArrayView1, Axis};

use crate::error::{Error, Result};

/// N x d matrix of samples. Row i holds the d components at the i-th instant.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    data: Array2<f64>,
}

impl SampleMatrix {
    /// Builds from an N x d array, validating shape and finiteness.
    pub fn new(data: Array2<f64>) -> Result<Self> {
        let (n, d) = data.dim();
        if n == 0 || d == 0 {
            return Err(Error::EmptyInput(format!("sample matrix of shape {n}x{d}")));
        }
        for ((i, j), &v) in data.indexed_iter() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { row: i, col: j });
            }
        }
        Ok(SampleMatrix { data })
    }

    /// Builds from per-axis columns, all of equal length.
    pub fn from_axes(axes: &[Vec<f64>]) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::EmptyInput("no axes given".into()));
        }
        let n = axes[0].len();
        for (k, ax) in axes.iter().enumerate() {
            if ax.len() != n {
                return Err(Error::AxisLengthMismatch {
                    axis: k,
                    got: ax.len(),
                    expected: n,
                });
            }
        }
        if n == 0 {
            return Err(Error::EmptyInput("axes have zero samples".into()));
        }
        let mut data = Array2::zeros((n, axes.len()));
        for (k, ax) in axes.iter().enumerate() {
            for (i, &v) in ax.iter().enumerate() {
                data[[i, k]] = v;
            }
        }
        Self::new(data)
    }

    /// Builds from N rows of d points each.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("no points given".into()));
        }
        let d = points[0].len();
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::AxisLengthMismatch {
                    axis: i,
                    got: p.len(),
                    expected: d,
                });
            }
        }
        let mut data = Array2::zeros((points.len(), d));
        for (i, p) in points.iter().enumerate() {
            for (j, &v) in p.iter().enumerate() {
                data[[i, j]] = v;
            }
        }
        Self::new(data)
    }

    pub fn n_samples(&self) -> usize {
        self.data.nrows()
    }

    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &Array2<f64> {
        &self.data
    }

    /// Column view for one axis.
    pub fn axis(&self, k: usize) -> Result<ArrayView1<'_, f64>> {
        if k >= self.dim() {
            return Err(Error::AxisOutOfRange {
                axis: k,
                dim: self.dim(),
            });
        }
        Ok(self.data.column(k))
    }

    pub fn x(&self) -> Result<ArrayView1<'_, f64>> {
        self.axis(0)
    }

    pub fn y(&self) -> Result<ArrayView1<'_, f64>> {
        self.axis(1)
    }

    pub fn z(&self) -> Result<ArrayView1<'_, f64>> {
        self.axis(2)
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.data.row(i)
    }

    /// Euclidean norm of every row.
    pub fn norm(&self) -> Array1<f64> {
        self.data
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }

    /// Row differences: (N-1) x d matrix of r[i+1] - r[i].
    pub fn delta(&self) -> Array2<f64> {
        let n = self.n_samples();
        let upper = self.data.slice_axis(Axis(0), (1..n).into());
        let lower = self.data.slice_axis(Axis(0), (0..n - 1).into());
        &upper - &lower
    }
}
