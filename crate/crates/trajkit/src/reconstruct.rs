//! Camera motion estimation from background point correspondences and
//! composition of object-in-camera measurements into a fixed lab frame.
//!
//! The per-frame motion model is the affine matrix
//! [[s cos(theta), -sin(theta), t_x], [sin(theta), s cos(theta), t_y]]:
//! scale multiplies only the cosine terms. It is implemented verbatim as a
//! linear model in (a, b, t_x, t_y) = (s cos(theta), sin(theta), t_x, t_y),
//! which restricts per-frame rotations to (-pi/2, pi/2).

use nalgebra::{Matrix4, Vector4};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::traj::Trajectory;
use crate::vector::SampleMatrix;

/// Per-frame camera motion estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffinePose {
    pub theta: f64,
    pub t: [f64; 2],
    pub scale: f64,
    /// Mean squared residual of the least-squares fit.
    pub mse: f64,
    pub valid: bool,
}

/// Matched background points between two consecutive frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCorrespondences {
    pub src: Vec<[f64; 2]>,
    pub dst: Vec<[f64; 2]>,
}

impl PointCorrespondences {
    pub fn validate(&self) -> Result<()> {
        if self.src.len() != self.dst.len() {
            return Err(Error::LengthMismatch(self.src.len(), self.dst.len()));
        }
        if self.src.len() < 2 {
            return Err(Error::TooFewCorrespondences(self.src.len()));
        }
        for p in self.src.iter().chain(self.dst.iter()) {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::Parse("non-finite correspondence point".into()));
            }
        }
        Ok(())
    }
}

/// Accumulated camera orientation and lab-frame position per frame,
/// including the anchor frame 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CameraPath {
    pub alpha: Vec<f64>,
    pub r_cl: Vec<[f64; 2]>,
}

impl CameraPath {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Forward application of the affine motion model to one point.
pub fn apply_affine(theta: f64, scale: f64, t: [f64; 2], p: [f64; 2]) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [
        scale * c * p[0] - s * p[1] + t[0],
        s * p[0] + scale * c * p[1] + t[1],
    ]
}

/// Least-squares fit of (theta, t_x, t_y, s) to the correspondences.
pub fn estimate_affine(
    corr: &PointCorrespondences,
    mse_threshold: f64,
    scale_threshold: f64,
) -> Result<AffinePose> {
    corr.validate()?;
    // Normal equations for the rows
    //   [x, -y, 1, 0] . p = x'
    //   [y,  x, 0, 1] . p = y'
    // with p = (a, b, t_x, t_y).
    let mut ata = Matrix4::<f64>::zeros();
    let mut atb = Vector4::<f64>::zeros();
    for (s, d) in corr.src.iter().zip(&corr.dst) {
        let rows = [
            ([s[0], -s[1], 1.0, 0.0], d[0]),
            ([s[1], s[0], 0.0, 1.0], d[1]),
        ];
        for (row, rhs) in rows {
            for i in 0..4 {
                for j in 0..4 {
                    ata[(i, j)] += row[i] * row[j];
                }
                atb[i] += row[i] * rhs;
            }
        }
    }
    let solution = ata
        .lu()
        .solve(&atb)
        .ok_or(Error::DegenerateCorrespondences)?;
    if solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateCorrespondences);
    }
    let (a, b, tx, ty) = (solution[0], solution[1], solution[2], solution[3]);
    if b.abs() > 1.0 + 1e-9 {
        return Err(Error::ModelViolation(b.abs()));
    }
    let theta = b.clamp(-1.0, 1.0).asin();
    let cos_theta = theta.cos();
    if cos_theta < 1e-12 {
        return Err(Error::ModelViolation(b.abs()));
    }
    let scale = a / cos_theta;
    let mut residual_sum = 0.0;
    for (s, d) in corr.src.iter().zip(&corr.dst) {
        let p = apply_affine(theta, scale, [tx, ty], *s);
        residual_sum += (p[0] - d[0]).powi(2) + (p[1] - d[1]).powi(2);
    }
    let mse = residual_sum / corr.src.len() as f64;
    Ok(AffinePose {
        theta,
        t: [tx, ty],
        scale,
        mse,
        valid: mse <= mse_threshold && (scale - 1.0).abs() <= scale_threshold,
    })
}

fn rotate_inv(alpha: f64, p: [f64; 2]) -> [f64; 2] {
    let (s, c) = alpha.sin_cos();
    // R(alpha) transpose.
    [c * p[0] + s * p[1], -s * p[0] + c * p[1]]
}

/// Accumulates per-frame poses into a camera path in the lab frame.
///
/// alpha_i = alpha_{i-1} + theta_i and
/// r_i = R^{-1}(alpha_i) (-t_i) + r_{i-1}, starting from the anchor.
/// Invalid poses abort unless `allow_invalid` is set.
pub fn accumulate_camera_path(
    poses: &[AffinePose],
    anchor: (f64, [f64; 2]),
    allow_invalid: bool,
) -> Result<CameraPath> {
    let mut alpha = Vec::with_capacity(poses.len() + 1);
    let mut r_cl = Vec::with_capacity(poses.len() + 1);
    alpha.push(anchor.0);
    r_cl.push(anchor.1);
    for (i, pose) in poses.iter().enumerate() {
        if !pose.valid && !allow_invalid {
            return Err(Error::InvalidPose(i));
        }
        let a = alpha[i] + pose.theta;
        let step = rotate_inv(a, [-pose.t[0], -pose.t[1]]);
        r_cl.push([r_cl[i][0] + step[0], r_cl[i][1] + step[1]]);
        alpha.push(a);
    }
    Ok(CameraPath { alpha, r_cl })
}

/// Composes object-in-camera positions with a camera path:
/// r_i = R^{-1}(alpha_i) r_i^(oc) + r_i^(cl), returned on a frame-index grid
/// (dt = 1/fps when given).
pub fn object_to_lab(r_oc: &[[f64; 2]], path: &CameraPath, fps: Option<f64>) -> Result<Trajectory> {
    if r_oc.len() != path.len() {
        return Err(Error::LengthMismatch(r_oc.len(), path.len()));
    }
    let mut data = Array2::zeros((r_oc.len(), 2));
    for (i, p) in r_oc.iter().enumerate() {
        let rotated = rotate_inv(path.alpha[i], *p);
        data[[i, 0]] = rotated[0] + path.r_cl[i][0];
        data[[i, 1]] = rotated[1] + path.r_cl[i][1];
    }
    let dt = fps.map(|f| 1.0 / f).unwrap_or(1.0);
    Trajectory::new(
        SampleMatrix::new(data)?,
        TimeGrid::uniform(dt, 0.0)?,
        Default::default(),
        None,
    )
}
