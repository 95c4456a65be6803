//! Trajectory toolkit: stochastic ensemble generation (random walk, Langevin,
//! diffusing-diffusivity), statistical observables (VACF, MSD, kurtosis, PSD,
//! histograms), trajectory transformations, and lab-frame reconstruction from
//! moving-camera affine motion parameters.

pub mod diff;
pub mod ensemble;
pub mod error;
pub mod generators;
pub mod grid;
pub mod io;
pub mod reconstruct;
pub mod scenarios;
pub mod stats;
pub mod traj;
pub mod transform;
pub mod vector;

pub use diff::{DiffMethod, FiniteDiffVariant};
pub use ensemble::Ensemble;
pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use traj::{CombineOp, Trajectory};
pub use vector::SampleMatrix;

/// Builds a rayon thread pool honoring the TRAJKIT_THREADS cap (0 = auto).
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("TRAJKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction cannot fail with valid settings")
}
