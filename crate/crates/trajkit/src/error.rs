use thiserror::Error;

/// Errors produced by trajectory construction, statistics and reconstruction.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("axis length mismatch: axis {axis} has {got} samples, expected {expected}")]
    AxisLengthMismatch {
        axis: usize,
        got: usize,
        expected: usize,
    },
    #[error("time vector must be strictly increasing (violation at index {0})")]
    NonIncreasingTime(usize),
    #[error("time grid length {got} does not match {expected} position samples")]
    TimeLengthMismatch { got: usize, expected: usize },
    #[error("non-finite value at sample {row}, axis {col}")]
    NonFiniteValue { row: usize, col: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("time grids differ beyond tolerance at sample {0}")]
    TimeGridMismatch(usize),
    #[error("kinematics undefined: trajectory has a single sample")]
    KinematicsUndefined,
    #[error("{scheme} differentiation needs at least {min} samples, got {got}")]
    TooFewSamples {
        scheme: &'static str,
        min: usize,
        got: usize,
    },
    #[error("invalid differentiation window {0}: must be odd and >= 3")]
    InvalidWindow(usize),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("operation requires dimension {expected}, trajectory has {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("polar offset would produce a negative radius at sample {0}")]
    NegativeRadius(usize),
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("lag {lag} out of range for {n} samples")]
    LagOutOfRange { lag: usize, n: usize },
    #[error("ensemble trajectories do not share a common time grid (trajectory {0})")]
    GridMismatchInEnsemble(usize),
    #[error("operation requires a uniform time grid")]
    NonUniformGrid,
    #[error("singular covariance matrix at time index {0}")]
    SingularCovariance(usize),
    #[error("ensemble too small: need at least {min} trajectories, got {got}")]
    EnsembleTooSmall { min: usize, got: usize },
    #[error("time instant {0} outside trajectory range")]
    InstantOutOfRange(f64),
    #[error("resampling target outside the original time range [{lo}, {hi}]")]
    Extrapolation { lo: f64, hi: f64 },
    #[error("interpolation order {order} needs at least {} samples, got {n}", order + 1)]
    OrderTooHigh { order: usize, n: usize },
    #[error("affine estimation needs at least 2 correspondences, got {0}")]
    TooFewCorrespondences(usize),
    #[error("degenerate point configuration: normal equations are singular")]
    DegenerateCorrespondences,
    #[error("affine model violation: |sin(theta)| = {0} exceeds 1")]
    ModelViolation(f64),
    #[error("pose {0} is invalid (mse or scale out of bounds)")]
    InvalidPose(usize),
    #[error("length mismatch: {0} object samples vs {1} camera frames")]
    LengthMismatch(usize, usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported schema version {got} (supported major version: {supported})")]
    UnsupportedSchema { got: String, supported: u32 },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
