//! C ABI for the trajkit trajectory toolkit.
//!
//! Conventions:
//! - Handles (`TkTrajectory*`, `TkEnsemble*`, `TkSeries*`) are opaque and must
//!   be released with the matching `*_free` function.
//! - Functions returning `TkStatus` report failure without panicking; call
//!   [`tk_last_error_message`] for a human-readable description.
//! - Matrix buffers are row-major `n_samples x dim` `double` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;
use std::slice;

use trajkit::generators::{
    generate_diffdiff, generate_langevin, generate_random_walk, DiffDiffConfig, GeneratorBase,
    LangevinConfig, RandomWalkConfig,
};
use trajkit::reconstruct::{estimate_affine, PointCorrespondences};
use trajkit::stats::{self, AveragingMode, StatSeries};
use trajkit::transform;
use trajkit::{Ensemble, SampleMatrix, TimeGrid, Trajectory};

/// Status codes returned by fallible functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationError = 3,
}

/// Opaque trajectory handle.
pub struct TkTrajectory(Trajectory);

/// Opaque ensemble handle.
pub struct TkEnsemble(Ensemble);

/// Opaque statistics-series handle.
pub struct TkSeries(StatSeries);

/// Estimated per-frame camera pose (plain struct, no handle needed).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TkAffinePose {
    pub theta: f64,
    pub tx: f64,
    pub ty: f64,
    pub scale: f64,
    pub mse: f64,
    /// 1 when the pose passes the mse/scale validity thresholds.
    pub valid: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TkStatus, msg: impl std::fmt::Display) -> TkStatus {
    set_error(msg.to_string());
    status
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes). Returns the full message length including the
/// terminator, or 0 when no error is recorded. `buf` may be null to query the
/// required size.
#[no_mangle]
pub unsafe extern "C" fn tk_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let borrow = e.borrow();
        let Some(msg) = borrow.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            // Always terminate, even when truncating.
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

unsafe fn matrix_from_raw(
    data: *const f64,
    n_samples: usize,
    dim: usize,
) -> Result<SampleMatrix, TkStatus> {
    if data.is_null() {
        set_error("data pointer is null");
        return Err(TkStatus::NullPointer);
    }
    if n_samples == 0 || dim == 0 {
        set_error("n_samples and dim must be positive");
        return Err(TkStatus::InvalidArgument);
    }
    let raw = slice::from_raw_parts(data, n_samples * dim);
    let array = ndarray::Array2::from_shape_vec((n_samples, dim), raw.to_vec())
        .expect("length checked above");
    SampleMatrix::new(array).map_err(|e| fail(TkStatus::InvalidArgument, e))
}

/// Creates a trajectory from a row-major `n_samples x dim` position buffer on
/// a uniform time grid. Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_new(
    data: *const f64,
    n_samples: usize,
    dim: usize,
    dt: f64,
    t0: f64,
) -> *mut TkTrajectory {
    let matrix = match matrix_from_raw(data, n_samples, dim) {
        Ok(m) => m,
        Err(_) => return ptr::null_mut(),
    };
    let grid = match TimeGrid::uniform(dt, t0) {
        Ok(g) => g,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    match Trajectory::new(matrix, grid, Default::default(), None) {
        Ok(t) => Box::into_raw(Box::new(TkTrajectory(t))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_free(traj: *mut TkTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_n_samples(traj: *const TkTrajectory) -> usize {
    if traj.is_null() {
        return 0;
    }
    (*traj).0.n_samples()
}

#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_dim(traj: *const TkTrajectory) -> usize {
    if traj.is_null() {
        return 0;
    }
    (*traj).0.dim()
}

unsafe fn copy_matrix(m: &SampleMatrix, out: *mut f64, out_len: usize) -> TkStatus {
    if out.is_null() {
        return fail(TkStatus::NullPointer, "output pointer is null");
    }
    let needed = m.n_samples() * m.dim();
    if out_len < needed {
        return fail(
            TkStatus::InvalidArgument,
            format!("output buffer holds {out_len} doubles, need {needed}"),
        );
    }
    let dst = slice::from_raw_parts_mut(out, needed);
    for (i, row) in m.data().rows().into_iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            dst[i * m.dim() + k] = v;
        }
    }
    TkStatus::Ok
}

/// Copies the positions into `out` (row-major, `n_samples * dim` doubles).
#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_positions(
    traj: *const TkTrajectory,
    out: *mut f64,
    out_len: usize,
) -> TkStatus {
    if traj.is_null() {
        return fail(TkStatus::NullPointer, "trajectory handle is null");
    }
    copy_matrix((*traj).0.r(), out, out_len)
}

/// Copies the velocity samples into `out` (row-major, `n_samples * dim`).
#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_velocity(
    traj: *const TkTrajectory,
    out: *mut f64,
    out_len: usize,
) -> TkStatus {
    if traj.is_null() {
        return fail(TkStatus::NullPointer, "trajectory handle is null");
    }
    match (*traj).0.v() {
        Ok(v) => copy_matrix(v, out, out_len),
        Err(e) => fail(TkStatus::ComputationError, e),
    }
}

/// Keeps every `step`-th sample of the trajectory. Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_subsample(
    traj: *const TkTrajectory,
    step: usize,
) -> *mut TkTrajectory {
    if traj.is_null() {
        set_error("trajectory handle is null");
        return ptr::null_mut();
    }
    match transform::subsample(&(*traj).0, step) {
        Ok(t) => Box::into_raw(Box::new(TkTrajectory(t))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Applies the exponential convolutional smoothing filter. Returns null on
/// failure.
#[no_mangle]
pub unsafe extern "C" fn tk_trajectory_exp_filter(
    traj: *const TkTrajectory,
    omega: f64,
) -> *mut TkTrajectory {
    if traj.is_null() {
        set_error("trajectory handle is null");
        return ptr::null_mut();
    }
    match transform::exp_convolutional_filter(&(*traj).0, omega) {
        Ok(t) => Box::into_raw(Box::new(TkTrajectory(t))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

fn base(total_time: f64, dim: usize, n_trajs: usize, dt: f64, seed: u64) -> GeneratorBase {
    GeneratorBase {
        total_time,
        dim,
        n_trajs,
        dt,
        seed: Some(seed),
    }
}

fn ensemble_out(result: trajkit::Result<Ensemble>) -> *mut TkEnsemble {
    match result {
        Ok(e) => Box::into_raw(Box::new(TkEnsemble(e))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Generates a lazy random walk ensemble. `prob` is a row-major `dim x 3`
/// buffer of per-axis (q, w, p) step probabilities; each row must sum to 1.
/// Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_generate_random_walk(
    total_time: f64,
    dim: usize,
    n_trajs: usize,
    dt: f64,
    seed: u64,
    prob: *const f64,
) -> *mut TkEnsemble {
    if prob.is_null() {
        set_error("prob pointer is null");
        return ptr::null_mut();
    }
    if dim == 0 {
        set_error("dim must be positive");
        return ptr::null_mut();
    }
    let raw = slice::from_raw_parts(prob, dim * 3);
    let rows: Vec<[f64; 3]> = raw.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    let cfg = RandomWalkConfig::new(base(total_time, dim, n_trajs, dt, seed), rows);
    ensemble_out(generate_random_walk(&cfg))
}

/// Generates a Langevin ensemble with stationary initial velocities.
/// Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_generate_langevin(
    total_time: f64,
    dim: usize,
    n_trajs: usize,
    dt: f64,
    seed: u64,
    gamma: f64,
    sigma: f64,
) -> *mut TkEnsemble {
    let cfg = LangevinConfig::new(base(total_time, dim, n_trajs, dt, seed), gamma, sigma);
    ensemble_out(generate_langevin(&cfg))
}

/// Generates a diffusing-diffusivity ensemble. Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_generate_diffdiff(
    total_time: f64,
    dim: usize,
    n_trajs: usize,
    dt: f64,
    seed: u64,
    tau: f64,
    sigma: f64,
) -> *mut TkEnsemble {
    let cfg = DiffDiffConfig::new(base(total_time, dim, n_trajs, dt, seed), tau, sigma);
    ensemble_out(generate_diffdiff(&cfg))
}

#[no_mangle]
pub unsafe extern "C" fn tk_ensemble_free(ens: *mut TkEnsemble) {
    if !ens.is_null() {
        drop(Box::from_raw(ens));
    }
}

#[no_mangle]
pub unsafe extern "C" fn tk_ensemble_len(ens: *const TkEnsemble) -> usize {
    if ens.is_null() {
        return 0;
    }
    (*ens).0.len()
}

/// Returns an owned copy of trajectory `index`, or null when out of range.
#[no_mangle]
pub unsafe extern "C" fn tk_ensemble_get(
    ens: *const TkEnsemble,
    index: usize,
) -> *mut TkTrajectory {
    if ens.is_null() {
        set_error("ensemble handle is null");
        return ptr::null_mut();
    }
    match (*ens).0.trajs().get(index) {
        Some(t) => Box::into_raw(Box::new(TkTrajectory(t.clone()))),
        None => {
            set_error(format!("index {index} out of range"));
            ptr::null_mut()
        }
    }
}

fn series_out(result: trajkit::Result<StatSeries>) -> *mut TkSeries {
    match result {
        Ok(s) => Box::into_raw(Box::new(TkSeries(s))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

fn mode(time_avg: i32, lag: usize) -> AveragingMode {
    if time_avg != 0 {
        AveragingMode::TimeAvg { lag }
    } else {
        AveragingMode::Ensemble
    }
}

/// Velocity autocorrelation function; `lag` is used when `time_avg` != 0.
/// Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_vacf(
    ens: *const TkEnsemble,
    time_avg: i32,
    lag: usize,
) -> *mut TkSeries {
    if ens.is_null() {
        set_error("ensemble handle is null");
        return ptr::null_mut();
    }
    series_out(stats::vacf(&(*ens).0, mode(time_avg, lag)))
}

/// Mean squared displacement; `lag` is used when `time_avg` != 0.
/// Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_msd(
    ens: *const TkEnsemble,
    time_avg: i32,
    lag: usize,
) -> *mut TkSeries {
    if ens.is_null() {
        set_error("ensemble handle is null");
        return ptr::null_mut();
    }
    series_out(stats::msd(&(*ens).0, mode(time_avg, lag)))
}

/// Velocity kurtosis over time. Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_kurtosis(ens: *const TkEnsemble, time_avg: i32) -> *mut TkSeries {
    if ens.is_null() {
        set_error("ensemble handle is null");
        return ptr::null_mut();
    }
    series_out(stats::kurtosis(&(*ens).0, time_avg != 0))
}

/// Velocity power spectral density; `omega` != 0 uses angular frequency.
/// Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn tk_psd(ens: *const TkEnsemble, omega: i32) -> *mut TkSeries {
    if ens.is_null() {
        set_error("ensemble handle is null");
        return ptr::null_mut();
    }
    series_out(stats::psd(&(*ens).0, omega != 0))
}

#[no_mangle]
pub unsafe extern "C" fn tk_series_free(series: *mut TkSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

#[no_mangle]
pub unsafe extern "C" fn tk_series_len(series: *const TkSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    (*series).0.mean.len()
}

unsafe fn copy_vec(v: &[f64], out: *mut f64, out_len: usize) -> TkStatus {
    if out.is_null() {
        return fail(TkStatus::NullPointer, "output pointer is null");
    }
    if out_len < v.len() {
        return fail(
            TkStatus::InvalidArgument,
            format!("output buffer holds {out_len} doubles, need {}", v.len()),
        );
    }
    ptr::copy_nonoverlapping(v.as_ptr(), out, v.len());
    TkStatus::Ok
}

/// Copies the lag/time (or frequency) axis into `out`.
#[no_mangle]
pub unsafe extern "C" fn tk_series_axis(
    series: *const TkSeries,
    out: *mut f64,
    out_len: usize,
) -> TkStatus {
    if series.is_null() {
        return fail(TkStatus::NullPointer, "series handle is null");
    }
    copy_vec(&(*series).0.lag_or_time, out, out_len)
}

/// Copies the mean values into `out`.
#[no_mangle]
pub unsafe extern "C" fn tk_series_mean(
    series: *const TkSeries,
    out: *mut f64,
    out_len: usize,
) -> TkStatus {
    if series.is_null() {
        return fail(TkStatus::NullPointer, "series handle is null");
    }
    copy_vec(&(*series).0.mean, out, out_len)
}

/// Copies the per-point spread (population standard deviation) into `out`.
#[no_mangle]
pub unsafe extern "C" fn tk_series_spread(
    series: *const TkSeries,
    out: *mut f64,
    out_len: usize,
) -> TkStatus {
    if series.is_null() {
        return fail(TkStatus::NullPointer, "series handle is null");
    }
    copy_vec(&(*series).0.spread, out, out_len)
}

/// Fits an affine camera pose from `k` point correspondences. `src` and `dst`
/// are row-major `k x 2` buffers.
#[no_mangle]
pub unsafe extern "C" fn tk_estimate_affine(
    src: *const f64,
    dst: *const f64,
    k: usize,
    mse_threshold: f64,
    scale_threshold: f64,
    out: *mut TkAffinePose,
) -> TkStatus {
    if src.is_null() || dst.is_null() || out.is_null() {
        return fail(TkStatus::NullPointer, "src/dst/out pointer is null");
    }
    let to_points = |p: *const f64| -> Vec<[f64; 2]> {
        slice::from_raw_parts(p, k * 2)
            .chunks(2)
            .map(|c| [c[0], c[1]])
            .collect()
    };
    let corr = PointCorrespondences {
        src: to_points(src),
        dst: to_points(dst),
    };
    match estimate_affine(&corr, mse_threshold, scale_threshold) {
        Ok(pose) => {
            *out = TkAffinePose {
                theta: pose.theta,
                tx: pose.t[0],
                ty: pose.t[1],
                scale: pose.scale,
                mse: pose.mse,
                valid: pose.valid as i32,
            };
            TkStatus::Ok
        }
        Err(e) => fail(TkStatus::ComputationError, e),
    }
}
