//! The trajectory data model: positions on a time grid with lazily derived
//! velocity and acceleration, plus point-wise trajectory algebra.

use std::sync::OnceLock;

use ndarray::{Array1, Array2};

use crate::diff::{differentiate, DiffMethod};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::vector::SampleMatrix;

/// Point-wise binary operation between trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
}

/// A sampled path: N position samples of dimension d on a time grid.
///
/// Values are immutable after construction; every operation returns a new
/// trajectory with kinematics recomputed on demand.
#[derive(Debug, Clone)]
pub struct Trajectory {
    r: SampleMatrix,
    t: TimeGrid,
    diff_method: DiffMethod,
    traj_id: Option<String>,
    v_cache: OnceLock<std::result::Result<SampleMatrix, Error>>,
    a_cache: OnceLock<std::result::Result<SampleMatrix, Error>>,
}

impl PartialEq for Trajectory {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
            && self.t == other.t
            && self.diff_method == other.diff_method
            && self.traj_id == other.traj_id
    }
}

impl Trajectory {
    pub fn new(r: SampleMatrix, t: TimeGrid, diff_method: DiffMethod, traj_id: Option<String>) -> Result<Self> {
        diff_method.validate()?;
        if let Some(len) = t.explicit_len() {
            if len != r.n_samples() {
                return Err(Error::TimeLengthMismatch {
                    got: len,
                    expected: r.n_samples(),
                });
            }
        }
        Ok(Trajectory {
            r,
            t,
            diff_method,
            traj_id,
            v_cache: OnceLock::new(),
            a_cache: OnceLock::new(),
        })
    }

    /// Builds a trajectory from per-axis sample vectors.
    pub fn from_axes(axes: &[Vec<f64>], time: Option<TimeGrid>, diff: Option<DiffMethod>) -> Result<Self> {
        let r = SampleMatrix::from_axes(axes)?;
        Self::new(
            r,
            time.unwrap_or_else(TimeGrid::default_uniform),
            diff.unwrap_or_default(),
            None,
        )
    }

    /// Builds a trajectory from N rows of d-dimensional points.
    pub fn from_points(points: &[Vec<f64>], time: Option<TimeGrid>, diff: Option<DiffMethod>) -> Result<Self> {
        let r = SampleMatrix::from_points(points)?;
        Self::new(
            r,
            time.unwrap_or_else(TimeGrid::default_uniform),
            diff.unwrap_or_default(),
            None,
        )
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.traj_id = Some(id.into());
        self
    }

    /// Same time grid and settings, different position samples.
    pub fn with_positions(&self, r: SampleMatrix) -> Result<Self> {
        if r.n_samples() != self.n_samples() {
            return Err(Error::TimeLengthMismatch {
                got: self.n_samples(),
                expected: r.n_samples(),
            });
        }
        Trajectory::new(r, self.t.clone(), self.diff_method, self.traj_id.clone())
    }

    pub fn n_samples(&self) -> usize {
        self.r.n_samples()
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn r(&self) -> &SampleMatrix {
        &self.r
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.t
    }

    pub fn diff_method(&self) -> DiffMethod {
        self.diff_method
    }

    pub fn traj_id(&self) -> Option<&str> {
        self.traj_id.as_deref()
    }

    pub fn times(&self) -> Array1<f64> {
        self.t.materialize(self.n_samples())
    }

    /// Velocity estimate. Errors for single-sample trajectories.
    pub fn v(&self) -> Result<&SampleMatrix> {
        if self.n_samples() < 2 {
            return Err(Error::KinematicsUndefined);
        }
        self.v_cache
            .get_or_init(|| differentiate(&self.r, &self.t, self.diff_method))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Acceleration estimate, obtained by differentiating the velocity.
    pub fn a(&self) -> Result<&SampleMatrix> {
        if self.n_samples() < 2 {
            return Err(Error::KinematicsUndefined);
        }
        self.a_cache
            .get_or_init(|| {
                self.v()
                    .cloned()
                    .and_then(|v| differentiate(&v, &self.t, self.diff_method))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Point-wise add/sub/mul of two trajectories on matching grids.
    pub fn combine(&self, other: &Trajectory, op: CombineOp) -> Result<Trajectory> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        if self.n_samples() != other.n_samples() {
            return Err(Error::LengthMismatch(self.n_samples(), other.n_samples()));
        }
        self.t
            .approx_eq(&other.t, self.n_samples())
            .map_err(Error::TimeGridMismatch)?;
        let a = self.r.data();
        let b = other.r.data();
        let data = match op {
            CombineOp::Add => a + b,
            CombineOp::Sub => a - b,
            CombineOp::Mul => a * b,
        };
        self.with_positions(SampleMatrix::new(data)?)
    }

    /// r_i <- scale (.) r_i + offset. Offset and scale are broadcast from a
    /// scalar (length 1) or applied per axis (length d).
    pub fn shift_scale(&self, offset: &[f64], scale: &[f64]) -> Result<Trajectory> {
        let d = self.dim();
        let expand = |v: &[f64], name: &'static str| -> Result<Vec<f64>> {
            match v.len() {
                1 => Ok(vec![v[0]; d]),
                len if len == d => Ok(v.to_vec()),
                len => Err(Error::InvalidParameter {
                    name,
                    reason: format!("length {len} is neither 1 nor dim {d}"),
                }),
            }
        };
        let offset = expand(offset, "offset")?;
        let scale = expand(scale, "scale")?;
        let mut data = self.r.data().clone();
        for mut row in data.rows_mut() {
            for j in 0..d {
                row[j] = scale[j] * row[j] + offset[j];
            }
        }
        self.with_positions(SampleMatrix::new(data)?)
    }

    /// Planar rotation about a pivot (default: origin).
    pub fn rotate_2d(&self, angle: f64, pivot: Option<[f64; 2]>) -> Result<Trajectory> {
        if self.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: self.dim(),
            });
        }
        let p = pivot.unwrap_or([0.0, 0.0]);
        let (s, c) = angle.sin_cos();
        let mut data = self.r.data().clone();
        for mut row in data.rows_mut() {
            let x = row[0] - p[0];
            let y = row[1] - p[1];
            row[0] = c * x - s * y + p[0];
            row[1] = s * x + c * y + p[1];
        }
        self.with_positions(SampleMatrix::new(data)?)
    }

    /// Rotation about an axis through a pivot (default: origin), Rodrigues form.
    pub fn rotate_3d(&self, axis: [f64; 3], angle: f64, pivot: Option<[f64; 3]>) -> Result<Trajectory> {
        if self.dim() != 3 {
            return Err(Error::WrongDimension {
                expected: 3,
                got: self.dim(),
            });
        }
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter {
                name: "axis",
                reason: "rotation axis must be non-zero".into(),
            });
        }
        let k = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
        let p = pivot.unwrap_or([0.0; 3]);
        let (s, c) = angle.sin_cos();
        let mut data = self.r.data().clone();
        for mut row in data.rows_mut() {
            let v = [row[0] - p[0], row[1] - p[1], row[2] - p[2]];
            let kxv = [
                k[1] * v[2] - k[2] * v[1],
                k[2] * v[0] - k[0] * v[2],
                k[0] * v[1] - k[1] * v[0],
            ];
            let kdv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
            for j in 0..3 {
                row[j] = v[j] * c + kxv[j] * s + k[j] * kdv * (1.0 - c) + p[j];
            }
        }
        self.with_positions(SampleMatrix::new(data)?)
    }

    /// Per-sample polar shift about the coordinate origin: every sample's
    /// polar representation (rho, phi) becomes (rho + radius, phi + angle).
    /// 2-D only; errors if any shifted radius would be negative.
    pub fn add_polar_offset(&self, radius: f64, angle: f64) -> Result<Trajectory> {
        if self.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: self.dim(),
            });
        }
        let mut data = Array2::zeros(self.r.data().dim());
        for (i, row) in self.r.data().rows().into_iter().enumerate() {
            let rho = (row[0] * row[0] + row[1] * row[1]).sqrt();
            let phi = row[1].atan2(row[0]);
            let rho2 = rho + radius;
            if rho2 < 0.0 {
                return Err(Error::NegativeRadius(i));
            }
            let phi2 = phi + angle;
            data[[i, 0]] = rho2 * phi2.cos();
            data[[i, 1]] = rho2 * phi2.sin();
        }
        self.with_positions(SampleMatrix::new(data)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj2(x: &[f64], y: &[f64]) -> Trajectory {
        Trajectory::from_axes(&[x.to_vec(), y.to_vec()], None, None).unwrap()
    }

    #[test]
    fn from_axes_defaults() {
        // The two-axis construction from the reference listing.
        let t = traj2(&[0.0, 1.0, 0.63, -0.37], &[0.0, 0.0, 0.98, 1.24]);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.n_samples(), 4);
        assert_eq!(t.times().to_vec(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn single_sample_kinematics_error() {
        let t = Trajectory::from_points(&[vec![0.0, 0.0]], None, None).unwrap();
        assert_eq!(t.n_samples(), 1);
        assert!(matches!(t.v(), Err(Error::KinematicsUndefined)));
        assert!(matches!(t.a(), Err(Error::KinematicsUndefined)));
    }

    #[test]
    fn explicit_time_must_increase() {
        assert!(TimeGrid::explicit(vec![0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn explicit_time_length_must_match() {
        let r = SampleMatrix::from_axes(&[vec![0.0, 1.0, 2.0]]).unwrap();
        let g = TimeGrid::explicit(vec![0.0, 1.0]).unwrap();
        let err = Trajectory::new(r, g, DiffMethod::default(), None).unwrap_err();
        assert!(matches!(err, Error::TimeLengthMismatch { .. }));
    }

    #[test]
    fn combine_sub_constant() {
        let led = Trajectory::from_points(&[vec![1.0, 1.0], vec![2.0, 1.0]], None, None).unwrap();
        let pivot = Trajectory::from_points(&[vec![0.5, 0.5], vec![0.5, 0.5]], None, None).unwrap();
        let centered = led.combine(&pivot, CombineOp::Sub).unwrap();
        assert_eq!(centered.r().row(0).to_vec(), vec![0.5, 0.5]);
        assert_eq!(centered.r().row(1).to_vec(), vec![1.5, 0.5]);
    }

    #[test]
    fn combine_identities() {
        let a = traj2(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]);
        let zero = traj2(&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]);
        let ones = traj2(&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0]);
        assert_eq!(a.combine(&zero, CombineOp::Add).unwrap().r(), a.r());
        assert_eq!(a.combine(&ones, CombineOp::Mul).unwrap().r(), a.r());
    }

    #[test]
    fn combine_rejects_mismatches() {
        let a = traj2(&[1.0, 2.0], &[0.0, 0.0]);
        let b = Trajectory::from_axes(&[vec![1.0, 2.0]], None, None).unwrap();
        assert!(matches!(a.combine(&b, CombineOp::Add), Err(Error::DimMismatch(2, 1))));
        let c = Trajectory::from_axes(
            &[vec![1.0, 2.0], vec![0.0, 0.0]],
            Some(TimeGrid::uniform(0.5, 0.0).unwrap()),
            None,
        )
        .unwrap();
        assert!(matches!(a.combine(&c, CombineOp::Add), Err(Error::TimeGridMismatch(_))));
    }

    #[test]
    fn shift_scale_identity_and_doubling() {
        let a = traj2(&[1.0, 2.0], &[3.0, 4.0]);
        let same = a.shift_scale(&[0.0], &[1.0]).unwrap();
        assert_eq!(same.r(), a.r());
        let doubled = Trajectory::from_axes(&[vec![1.0, 2.0]], None, None)
            .unwrap()
            .shift_scale(&[0.0], &[2.0])
            .unwrap();
        assert_eq!(doubled.r().x().unwrap().to_vec(), vec![2.0, 4.0]);
        // Differentiation is linear, so velocity doubles too.
        assert!((doubled.v().unwrap().x().unwrap()[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn shift_to_origin() {
        let w = traj2(&[2.0, 3.0, 4.0], &[1.0, 1.0, 2.0]);
        let first: Vec<f64> = w.r().row(0).to_vec();
        let moved = w.shift_scale(&[-first[0], -first[1]], &[1.0]).unwrap();
        assert_eq!(moved.r().row(0).to_vec(), vec![0.0, 0.0]);
    }

    #[test]
    fn rotate_2d_quarter_turn() {
        let t = traj2(&[1.0, 1.0], &[0.0, 0.0]);
        let r = t.rotate_2d(std::f64::consts::FRAC_PI_2, None).unwrap();
        assert!((r.r().row(0)[0]).abs() < 1e-12);
        assert!((r.r().row(0)[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotate_3d_half_turn_about_z() {
        let t = Trajectory::from_points(&[vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]], None, None).unwrap();
        let r = t.rotate_3d([0.0, 0.0, 1.0], std::f64::consts::PI, None).unwrap();
        assert!((r.r().row(0)[0] + 1.0).abs() < 1e-12);
        assert!((r.r().row(0)[1]).abs() < 1e-12);
        assert!(t.rotate_3d([0.0, 0.0, 0.0], 1.0, None).is_err());
    }

    #[test]
    fn polar_offset_examples() {
        let t = traj2(&[1.0, 1.0], &[0.0, 0.0]);
        let out = t.add_polar_offset(1.0, 0.0).unwrap();
        assert!((out.r().row(0)[0] - 2.0).abs() < 1e-12);
        let rot = t.add_polar_offset(0.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((rot.r().row(0)[0]).abs() < 1e-12);
        assert!((rot.r().row(0)[1] - 1.0).abs() < 1e-12);
        assert!(t.add_polar_offset(-2.0, 0.0).is_err());
    }
}
