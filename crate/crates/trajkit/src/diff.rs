//! Numerical differentiation of sampled data: linear finite differences and
//! Fornberg weights for arbitrary (possibly non-uniform) grids.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::vector::SampleMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteDiffVariant {
    Forward,
    Backward,
    /// Central in the interior, forward at the first sample, backward at the last.
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiffMethod {
    LinearFiniteDifference(FiniteDiffVariant),
    /// Window must be odd and >= 3; valid on non-uniform grids.
    FornbergWeights { window: usize },
}

impl Default for DiffMethod {
    fn default() -> Self {
        DiffMethod::LinearFiniteDifference(FiniteDiffVariant::Central)
    }
}

impl DiffMethod {
    pub fn validate(&self) -> Result<()> {
        if let DiffMethod::FornbergWeights { window } = self {
            if *window < 3 || window % 2 == 0 {
                return Err(Error::InvalidWindow(*window));
            }
        }
        Ok(())
    }

    fn min_samples(&self) -> usize {
        match self {
            DiffMethod::LinearFiniteDifference(_) => 2,
            DiffMethod::FornbergWeights { window } => *window,
        }
    }
}

/// First derivative of every column of `values` with respect to the grid.
pub fn differentiate(values: &SampleMatrix, grid: &TimeGrid, method: DiffMethod) -> Result<SampleMatrix> {
    method.validate()?;
    let n = values.n_samples();
    let d = values.dim();
    if n < method.min_samples() {
        return Err(Error::TooFewSamples {
            scheme: match method {
                DiffMethod::LinearFiniteDifference(_) => "finite-difference",
                DiffMethod::FornbergWeights { .. } => "fornberg",
            },
            min: method.min_samples(),
            got: n,
        });
    }
    let t = grid.materialize(n);
    let x = values.data();
    let mut out = Array2::zeros((n, d));
    match method {
        DiffMethod::LinearFiniteDifference(variant) => {
            for i in 0..n {
                let (lo, hi) = match variant {
                    FiniteDiffVariant::Forward => {
                        if i + 1 < n {
                            (i, i + 1)
                        } else {
                            (i - 1, i)
                        }
                    }
                    FiniteDiffVariant::Backward => {
                        if i > 0 {
                            (i - 1, i)
                        } else {
                            (i, i + 1)
                        }
                    }
                    FiniteDiffVariant::Central => {
                        if i == 0 {
                            (0, 1)
                        } else if i + 1 == n {
                            (n - 2, n - 1)
                        } else {
                            (i - 1, i + 1)
                        }
                    }
                };
                let dt = t[hi] - t[lo];
                for j in 0..d {
                    out[[i, j]] = (x[[hi, j]] - x[[lo, j]]) / dt;
                }
            }
        }
        DiffMethod::FornbergWeights { window } => {
            let half = window / 2;
            for i in 0..n {
                let start = i.saturating_sub(half).min(n - window);
                let nodes = &t.as_slice().unwrap()[start..start + window];
                let w = fornberg_weights(nodes, t[i], 1);
                for j in 0..d {
                    let mut acc = 0.0;
                    for (k, wk) in w.iter().enumerate() {
                        acc += wk * x[[start + k, j]];
                    }
                    out[[i, j]] = acc;
                }
            }
        }
    }
    SampleMatrix::new(out)
}

/// Finite-difference weights for the m-th derivative at `x0` on the given
/// nodes, by the Fornberg recursion. Returns one weight per node.
pub fn fornberg_weights(nodes: &[f64], x0: f64, m: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}
