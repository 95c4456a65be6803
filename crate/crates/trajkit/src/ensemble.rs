//! An ordered collection of trajectories sharing a spatial dimension.

use crate::error::{Error, Result};
use crate::traj::Trajectory;

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    trajs: Vec<Trajectory>,
}

impl Ensemble {
    pub fn new(trajs: Vec<Trajectory>) -> Result<Self> {
        if trajs.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let dim = trajs[0].dim();
        for t in &trajs {
            if t.dim() != dim {
                return Err(Error::DimMismatch(dim, t.dim()));
            }
        }
        Ok(Ensemble { trajs })
    }

    pub fn single(traj: Trajectory) -> Self {
        Ensemble { trajs: vec![traj] }
    }

    pub fn dim(&self) -> usize {
        self.trajs[0].dim()
    }

    pub fn len(&self) -> usize {
        self.trajs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn trajs(&self) -> &[Trajectory] {
        &self.trajs
    }

    pub fn into_trajs(self) -> Vec<Trajectory> {
        self.trajs
    }

    /// Shortest trajectory length across the ensemble.
    pub fn min_samples(&self) -> usize {
        self.trajs.iter().map(|t| t.n_samples()).min().unwrap()
    }

    /// Checks that all trajectories share the first trajectory's time grid
    /// over the first `n` samples.
    pub fn require_common_grid(&self, n: usize) -> Result<()> {
        let g0 = self.trajs[0].time_grid();
        for (i, t) in self.trajs.iter().enumerate().skip(1) {
            if g0.approx_eq(t.time_grid(), n).is_err() {
                return Err(Error::GridMismatchInEnsemble(i));
            }
        }
        Ok(())
    }
}

impl std::ops::Deref for Ensemble {
    type Target = [Trajectory];

    fn deref(&self) -> &[Trajectory] {
        &self.trajs
    }
}

impl<'a> IntoIterator for &'a Ensemble {
    type Item = &'a Trajectory;
    type IntoIter = std::slice::Iter<'a, Trajectory>;

    fn into_iter(self) -> Self::IntoIter {
        self.trajs.iter()
    }
}
