//! Stochastic trajectory ensemble generators: lazy random walk, Langevin
//! (Ornstein-Uhlenbeck velocity) and diffusing-diffusivity models.
//!
//! Every generator draws from a per-trajectory ChaCha substream derived by
//! mixing the configured seed with the trajectory index, so ensembles are
//! bit-identical for a fixed seed regardless of thread count or execution
//! order, and trajectory i of an N-trajectory run equals trajectory i of any
//! other run with the same seed.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::traj::Trajectory;
use crate::vector::SampleMatrix;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// The (T, dim, N, dt, seed) quartet shared by all generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBase {
    /// Total simulated time.
    pub total_time: f64,
    /// Spatial dimension of each trajectory.
    pub dim: usize,
    /// Number of trajectories in the ensemble.
    pub n_trajs: usize,
    /// Time step.
    pub dt: f64,
    /// Seed for reproducible generation; None draws from entropy.
    pub seed: Option<u64>,
}

impl GeneratorBase {
    pub fn validate(&self) -> Result<()> {
        if !(self.total_time > 0.0) {
            return Err(invalid("T", "must be > 0"));
        }
        if self.dim == 0 {
            return Err(invalid("dim", "must be >= 1"));
        }
        if self.n_trajs == 0 {
            return Err(invalid("N", "must be >= 1"));
        }
        if !(self.dt > 0.0) {
            return Err(invalid("dt", "must be > 0"));
        }
        Ok(())
    }

    /// Samples per trajectory, endpoints inclusive: round(T/dt) + 1.
    pub fn n_samples(&self) -> usize {
        (self.total_time / self.dt).round() as usize + 1
    }

    fn effective_seed(&self) -> u64 {
        self.seed.unwrap_or_else(rand::random)
    }
}

fn invalid(name: &'static str, reason: &str) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// SplitMix64 finalizer; decorrelates consecutive substream seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent RNG for trajectory `index` under the given master seed.
pub fn substream(seed: u64, index: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(splitmix64(seed.wrapping_add(splitmix64(index))))
}

/// Per-axis step-length law of the random walk.
#[derive(Debug, Clone, PartialEq)]
pub enum StepLength {
    /// One constant length per axis.
    Constant(Vec<f64>),
    /// Explicit per-step lengths shared across axes; must cover every step.
    PerStep(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomWalkConfig {
    pub base: GeneratorBase,
    /// One (q, w, p) row per axis: probabilities of steps -1, 0, +1.
    pub prob: Vec<[f64; 3]>,
    pub step_length: StepLength,
}

impl RandomWalkConfig {
    pub fn new(base: GeneratorBase, prob: Vec<[f64; 3]>) -> Self {
        let dim = base.dim;
        RandomWalkConfig {
            base,
            prob,
            step_length: StepLength::Constant(vec![1.0; dim]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.prob.len() != self.base.dim {
            return Err(invalid("prob", "needs one (q, w, p) row per axis"));
        }
        for row in &self.prob {
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(invalid("prob", "entries must lie in [0, 1]"));
            }
            if (row.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
                return Err(invalid("prob", "each row must sum to 1"));
            }
        }
        match &self.step_length {
            StepLength::Constant(l) => {
                if l.len() != self.base.dim || l.iter().any(|&v| !(v > 0.0)) {
                    return Err(invalid("step_length", "one positive length per axis"));
                }
            }
            StepLength::PerStep(l) => {
                let steps = self.base.n_samples() - 1;
                if l.len() < steps || l.iter().any(|&v| !(v > 0.0)) {
                    return Err(invalid(
                        "step_length",
                        "per-step lengths must be positive and cover every step",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Initial velocity of the Langevin model.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Fixed(Vec<f64>),
    /// Draw from the stationary normal of the process.
    Stationary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LangevinConfig {
    pub base: GeneratorBase,
    /// Inverse relaxation time, 1/T units.
    pub gamma: f64,
    /// Noise scale.
    pub sigma: f64,
    pub v0: InitialState,
    pub r0: Vec<f64>,
}

impl LangevinConfig {
    pub fn new(base: GeneratorBase, gamma: f64, sigma: f64) -> Self {
        let dim = base.dim;
        LangevinConfig {
            base,
            gamma,
            sigma,
            v0: InitialState::Stationary,
            r0: vec![0.0; dim],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.gamma > 0.0) {
            return Err(invalid("gamma", "must be > 0"));
        }
        if !(self.sigma >= 0.0) {
            return Err(invalid("sigma", "must be >= 0"));
        }
        if let InitialState::Fixed(v) = &self.v0 {
            if v.len() != self.base.dim {
                return Err(invalid("v0", "length must equal dim"));
            }
        }
        if self.r0.len() != self.base.dim {
            return Err(invalid("r0", "length must equal dim"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffDiffConfig {
    pub base: GeneratorBase,
    /// Correlation time of the diffusivity process.
    pub tau: f64,
    /// Noise scale of the auxiliary process.
    pub sigma: f64,
    pub y0: InitialState,
    pub r0: Vec<f64>,
}

impl DiffDiffConfig {
    pub fn new(base: GeneratorBase, tau: f64, sigma: f64) -> Self {
        let dim = base.dim;
        DiffDiffConfig {
            base,
            tau,
            sigma,
            y0: InitialState::Stationary,
            r0: vec![0.0; dim],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.tau > 0.0) {
            return Err(invalid("tau", "must be > 0"));
        }
        if !(self.sigma >= 0.0) {
            return Err(invalid("sigma", "must be >= 0"));
        }
        if let InitialState::Fixed(v) = &self.y0 {
            if v.len() != self.base.dim {
                return Err(invalid("Y0", "length must equal dim"));
            }
        }
        if self.r0.len() != self.base.dim {
            return Err(invalid("r0", "length must equal dim"));
        }
        Ok(())
    }
}

fn build_ensemble<F>(base: &GeneratorBase, label: &str, body: F) -> Result<Ensemble>
where
    F: Fn(&mut ChaCha12Rng) -> Array2<f64> + Sync,
{
    let seed = base.effective_seed();
    let grid = TimeGrid::uniform(base.dt, 0.0)?;
    let trajs: Result<Vec<Trajectory>> = (0..base.n_trajs)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let data = body(&mut rng);
            Ok(Trajectory::new(
                SampleMatrix::new(data)?,
                grid.clone(),
                Default::default(),
                Some(format!("{label}-{i}")),
            )?)
        })
        .collect();
    Ensemble::new(trajs?)
}

/// Lazy random walk: per axis, increments of length L in {-1, 0, +1} drawn
/// with probabilities (q, w, p); positions start at the origin.
pub fn generate_random_walk(cfg: &RandomWalkConfig) -> Result<Ensemble> {
    cfg.validate()?;
    let n = cfg.base.n_samples();
    let dim = cfg.base.dim;
    build_ensemble(&cfg.base, "rw", |rng| {
        let mut data = Array2::zeros((n, dim));
        for step in 0..n - 1 {
            for axis in 0..dim {
                let [q, w, _] = cfg.prob[axis];
                let u: f64 = rng.gen();
                let z = if u < q {
                    -1.0
                } else if u < q + w {
                    0.0
                } else {
                    1.0
                };
                let length = match &cfg.step_length {
                    StepLength::Constant(l) => l[axis],
                    StepLength::PerStep(l) => l[step],
                };
                data[[step + 1, axis]] = data[[step, axis]] + length * z;
            }
        }
        data
    })
}

/// Langevin model: Euler-Maruyama integration of the velocity, position by
/// cumulative trapezoidal integration of the stored velocity.
pub fn generate_langevin(cfg: &LangevinConfig) -> Result<Ensemble> {
    cfg.validate()?;
    let n = cfg.base.n_samples();
    let dim = cfg.base.dim;
    let dt = cfg.base.dt;
    let sqrt_dt = dt.sqrt();
    // Stationary per-axis std of the OU velocity.
    let stationary_std = (cfg.sigma * cfg.sigma / (2.0 * cfg.gamma)).sqrt();
    build_ensemble(&cfg.base, "langevin", |rng| {
        let mut v = vec![0.0; dim];
        match &cfg.v0 {
            InitialState::Fixed(v0) => v.copy_from_slice(v0),
            InitialState::Stationary => {
                for vk in v.iter_mut() {
                    let xi: f64 = rng.sample(StandardNormal);
                    *vk = stationary_std * xi;
                }
            }
        }
        let mut data = Array2::zeros((n, dim));
        for (axis, &r0) in cfg.r0.iter().enumerate() {
            data[[0, axis]] = r0;
        }
        for k in 0..n - 1 {
            for axis in 0..dim {
                let xi: f64 = rng.sample(StandardNormal);
                let v_next = v[axis] - cfg.gamma * v[axis] * dt + cfg.sigma * sqrt_dt * xi;
                data[[k + 1, axis]] = data[[k, axis]] + 0.5 * (v[axis] + v_next) * dt;
                v[axis] = v_next;
            }
        }
        data
    })
}

/// Diffusing-diffusivity model: auxiliary OU process Y, per-axis diffusivity
/// D = Y^2, overdamped position update r += sqrt(2 D dt) xi.
pub fn generate_diffdiff(cfg: &DiffDiffConfig) -> Result<Ensemble> {
    cfg.validate()?;
    let n = cfg.base.n_samples();
    let dim = cfg.base.dim;
    let dt = cfg.base.dt;
    let sqrt_dt = dt.sqrt();
    let stationary_std = (cfg.sigma * cfg.sigma * cfg.tau / 2.0).sqrt();
    build_ensemble(&cfg.base, "diffdiff", |rng| {
        let mut y = vec![0.0; dim];
        match &cfg.y0 {
            InitialState::Fixed(y0) => y.copy_from_slice(y0),
            InitialState::Stationary => {
                for yk in y.iter_mut() {
                    let eta: f64 = rng.sample(StandardNormal);
                    *yk = stationary_std * eta;
                }
            }
        }
        let mut data = Array2::zeros((n, dim));
        for (axis, &r0) in cfg.r0.iter().enumerate() {
            data[[0, axis]] = r0;
        }
        for k in 0..n - 1 {
            for axis in 0..dim {
                let diffusivity = y[axis] * y[axis];
                let xi: f64 = rng.sample(StandardNormal);
                data[[k + 1, axis]] =
                    data[[k, axis]] + (2.0 * diffusivity).sqrt() * sqrt_dt * xi;
                let eta: f64 = rng.sample(StandardNormal);
                y[axis] += -y[axis] / cfg.tau * dt + cfg.sigma * sqrt_dt * eta;
            }
        }
        data
    })
}

/// Physical Langevin parameters for a sphere of the given mass and radius in
/// a fluid: gamma from Stokes drag, sigma from the fluctuation-dissipation
/// relation so the stationary velocity variance per axis is kT/m.
pub fn physical_langevin_params(
    mass: f64,
    radius: f64,
    fluid_viscosity: f64,
    temperature: f64,
) -> Result<(f64, f64)> {
    for (name, v) in [
        ("mass", mass),
        ("radius", radius),
        ("fluid_viscosity", fluid_viscosity),
        ("temperature", temperature),
    ] {
        if !(v > 0.0) {
            return Err(invalid(name, "must be > 0"));
        }
    }
    let gamma = 6.0 * std::f64::consts::PI * fluid_viscosity * radius / mass;
    let sigma = (2.0 * gamma * BOLTZMANN * temperature / mass).sqrt();
    Ok((gamma, sigma))
}
