//! Time grids: uniform (dt, t0) or explicit strictly increasing timestamps.

use ndarray::Array1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TimeGrid {
    Uniform { dt: f64, t0: f64 },
    Explicit(Vec<f64>),
}

impl TimeGrid {
    pub fn uniform(dt: f64, t0: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: format!("uniform grid needs finite dt > 0, got dt={dt}, t0={t0}"),
            });
        }
        Ok(TimeGrid::Uniform { dt, t0 })
    }

    pub fn explicit(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyInput("explicit time grid".into()));
        }
        for (i, w) in t.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::NonIncreasingTime(i + 1));
            }
        }
        if t.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("non-finite timestamp".into()));
        }
        Ok(TimeGrid::Explicit(t))
    }

    /// Default grid: uniformly spaced every 1 time unit from 0.
    pub fn default_uniform() -> Self {
        TimeGrid::Uniform { dt: 1.0, t0: 0.0 }
    }

    /// For explicit grids, the fixed number of samples; None for uniform.
    pub fn explicit_len(&self) -> Option<usize> {
        match self {
            TimeGrid::Uniform { .. } => None,
            TimeGrid::Explicit(t) => Some(t.len()),
        }
    }

    pub fn at(&self, i: usize) -> f64 {
        match self {
            TimeGrid::Uniform { dt, t0 } => t0 + i as f64 * dt,
            TimeGrid::Explicit(t) => t[i],
        }
    }

    /// Materializes the first n instants.
    pub fn materialize(&self, n: usize) -> Array1<f64> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// Step between consecutive samples; constant only for uniform grids.
    pub fn dt_at(&self, i: usize) -> f64 {
        match self {
            TimeGrid::Uniform { dt, .. } => *dt,
            TimeGrid::Explicit(t) => t[i + 1] - t[i],
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, TimeGrid::Uniform { .. })
    }

    /// Element-wise equality within relative tolerance 1e-9 * max(1, |t|).
    pub fn approx_eq(&self, other: &TimeGrid, n: usize) -> std::result::Result<(), usize> {
        for i in 0..n {
            let a = self.at(i);
            let b = other.at(i);
            let tol = 1e-9 * a.abs().max(b.abs()).max(1.0);
            if (a - b).abs() > tol {
                return Err(i);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_materializes() {
        let g = TimeGrid::uniform(0.5, 1.0).unwrap();
        assert_eq!(g.materialize(3).to_vec(), vec![1.0, 1.5, 2.0]);
    }

    #[test]
    fn explicit_must_increase() {
        let err = TimeGrid::explicit(vec![0.0, 2.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonIncreasingTime(2)));
        assert!(TimeGrid::explicit(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn approx_eq_tolerance() {
        let a = TimeGrid::uniform(1.0, 0.0).unwrap();
        let b = TimeGrid::explicit(vec![0.0, 1.0 + 1e-12, 2.0]).unwrap();
        assert!(a.approx_eq(&b, 3).is_ok());
        let c = TimeGrid::explicit(vec![0.0, 1.1, 2.0]).unwrap();
        assert_eq!(a.approx_eq(&c, 3), Err(1));
    }
}
