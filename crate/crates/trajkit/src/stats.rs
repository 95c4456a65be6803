//! Ensemble- and time-averaged statistical observables over trajectory
//! collections: velocity autocorrelation, mean square displacement, kurtosis,
//! power spectral density, speed and turning-angle histograms, and raw data
//! collection.
//!
//! Reductions use compensated (Kahan) summation so results are deterministic
//! regardless of how per-trajectory work is split.

use nalgebra::{DMatrix, DVector};
use ndarray::Array2;
use rayon::prelude::*;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::vector::SampleMatrix;

/// Which averaging procedure produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Averaging {
    Ensemble,
    Time,
}

/// How to average an observable over an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragingMode {
    /// Expectation across trajectories at each grid instant.
    Ensemble,
    /// Per-trajectory sliding time average up to `lag` steps, then mean and
    /// spread across the ensemble.
    TimeAvg { lag: usize },
}

/// A lag/time (or frequency) axis with mean values and per-point spread.
#[derive(Debug, Clone, PartialEq)]
pub struct StatSeries {
    pub lag_or_time: Vec<f64>,
    pub mean: Vec<f64>,
    /// Population standard deviation across the averaged population.
    pub spread: Vec<f64>,
    pub averaging: Averaging,
    /// Count averaged over at each point.
    pub population: usize,
    /// Set when a ragged ensemble was truncated to this common length.
    pub truncated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramResult {
    pub bin_edges: Vec<f64>,
    /// Counts, or densities when `normalized` is set.
    pub values: Vec<f64>,
    pub normalized: bool,
    pub circular: bool,
    /// Pairs skipped because a displacement had zero length.
    pub skipped: usize,
}

/// Histogram binning specification.
#[derive(Debug, Clone, PartialEq)]
pub enum BinSpec {
    /// Freedman-Diaconis width from the pooled sample.
    FreedmanDiaconis,
    Count(usize),
    Edges(Vec<f64>),
}

/// Signed angles map to [-pi, pi); unsigned to [0, 2*pi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleRange {
    Signed,
    Unsigned,
}

/// Quantity extracted by [`collect`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectQuantity {
    Position,
    Velocity,
    Speed,
}

/// Sampling rule for [`collect`].
#[derive(Debug, Clone, PartialEq)]
pub enum CollectSelector {
    /// Nearest grid point per trajectory at each instant.
    At(Vec<f64>),
    /// All sliding windows (i, i + lag), pooled.
    Lag(usize),
}

/// Rows of collected samples with their trajectory/sample provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectResult {
    pub values: Array2<f64>,
    pub traj_index: Vec<usize>,
    pub sample_index: Vec<usize>,
}

fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = kahan_sum(values.iter().copied()) / n;
    let var = kahan_sum(values.iter().map(|v| (v - mean) * (v - mean))) / n;
    (mean, var.max(0.0).sqrt())
}

/// Requires every trajectory to sit on a uniform grid with a common dt.
fn common_dt(ens: &Ensemble) -> Result<f64> {
    let mut dt0 = None;
    for t in ens.trajs() {
        match t.time_grid() {
            crate::grid::TimeGrid::Uniform { dt, .. } => match dt0 {
                None => dt0 = Some(*dt),
                Some(d) if (d - *dt).abs() <= 1e-9 * d.abs().max(1.0) => {}
                Some(_) => return Err(Error::NonUniformGrid),
            },
            crate::grid::TimeGrid::Explicit(_) => return Err(Error::NonUniformGrid),
        }
    }
    Ok(dt0.expect("ensemble is never empty"))
}

fn velocities(ens: &Ensemble) -> Result<Vec<&SampleMatrix>> {
    ens.trajs().iter().map(|t| t.v()).collect()
}

fn advisory_lag(lag: usize, dt: f64, total: f64) {
    if lag as f64 * dt > total / 2.0 {
        eprintln!(
            "warning: lag {lag} spans more than half the record ({:.3} > {:.3}); \
             time averages will be poorly sampled",
            lag as f64 * dt,
            total / 2.0
        );
    }
}

/// Sliding-window autocorrelation of the row series in `m`, lags 0..lag-1.
fn time_avg_dot_series(m: &SampleMatrix, lag: usize) -> Vec<f64> {
    let n = m.n_samples();
    let d = m.dim();
    let flat = m
        .data()
        .as_slice()
        .expect("sample matrices are standard-layout");
    (0..lag)
        .map(|k| {
            let terms = (0..n - k).map(|i| {
                let a = &flat[i * d..(i + 1) * d];
                let b = &flat[(i + k) * d..(i + k + 1) * d];
                a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
            });
            kahan_sum(terms) / (n - k) as f64
        })
        .collect()
}

/// Velocity autocorrelation function.
pub fn vacf(ens: &Ensemble, mode: AveragingMode) -> Result<StatSeries> {
    let vels = velocities(ens)?;
    match mode {
        AveragingMode::TimeAvg { lag } => {
            let dt = common_dt(ens)?;
            let n_min = ens.min_samples();
            if lag == 0 || lag >= n_min {
                return Err(Error::LagOutOfRange { lag, n: n_min });
            }
            advisory_lag(lag, dt, (n_min - 1) as f64 * dt);
            let per_traj: Vec<Vec<f64>> =
                vels.par_iter().map(|v| time_avg_dot_series(v, lag)).collect();
            collapse_time_avg(per_traj, dt, ens.len())
        }
        AveragingMode::Ensemble => {
            let n = ens.min_samples();
            ens.require_common_grid(n)?;
            let truncated = truncation(ens, n);
            let times = ens[0].time_grid().materialize(n);
            let mut mean = Vec::with_capacity(n);
            let mut spread = Vec::with_capacity(n);
            for i in 0..n {
                let vals: Vec<f64> = vels
                    .iter()
                    .map(|v| {
                        let v0 = v.row(0);
                        let vi = v.row(i);
                        v0.iter().zip(vi.iter()).map(|(a, b)| a * b).sum::<f64>()
                    })
                    .collect();
                let (m, s) = mean_std(&vals);
                mean.push(m);
                spread.push(s);
            }
            Ok(StatSeries {
                lag_or_time: times.to_vec(),
                mean,
                spread,
                averaging: Averaging::Ensemble,
                population: ens.len(),
                truncated,
            })
        }
    }
}

/// Sliding-window mean squared increment of the row series in `m`.
fn time_avg_sq_disp_series(m: &SampleMatrix, lag: usize) -> Vec<f64> {
    let n = m.n_samples();
    let d = m.dim();
    let flat = m
        .data()
        .as_slice()
        .expect("sample matrices are standard-layout");
    (0..lag)
        .map(|k| {
            let terms = (0..n - k).map(|i| {
                let a = &flat[i * d..(i + 1) * d];
                let b = &flat[(i + k) * d..(i + k + 1) * d];
                a.iter().zip(b).map(|(x, y)| (y - x) * (y - x)).sum::<f64>()
            });
            kahan_sum(terms) / (n - k) as f64
        })
        .collect()
}

/// Mean square displacement.
pub fn msd(ens: &Ensemble, mode: AveragingMode) -> Result<StatSeries> {
    match mode {
        AveragingMode::TimeAvg { lag } => {
            let dt = common_dt(ens)?;
            let n_min = ens.min_samples();
            if lag == 0 || lag >= n_min {
                return Err(Error::LagOutOfRange { lag, n: n_min });
            }
            advisory_lag(lag, dt, (n_min - 1) as f64 * dt);
            let per_traj: Vec<Vec<f64>> = ens
                .trajs()
                .par_iter()
                .map(|t| time_avg_sq_disp_series(t.r(), lag))
                .collect();
            collapse_time_avg(per_traj, dt, ens.len())
        }
        AveragingMode::Ensemble => {
            let n = ens.min_samples();
            ens.require_common_grid(n)?;
            let truncated = truncation(ens, n);
            let times = ens[0].time_grid().materialize(n);
            let mut mean = Vec::with_capacity(n);
            let mut spread = Vec::with_capacity(n);
            for i in 0..n {
                let vals: Vec<f64> = ens
                    .trajs()
                    .iter()
                    .map(|t| {
                        let r0 = t.r().row(0);
                        let ri = t.r().row(i);
                        r0.iter()
                            .zip(ri.iter())
                            .map(|(a, b)| (b - a) * (b - a))
                            .sum::<f64>()
                    })
                    .collect();
                let (m, s) = mean_std(&vals);
                mean.push(m);
                spread.push(s);
            }
            Ok(StatSeries {
                lag_or_time: times.to_vec(),
                mean,
                spread,
                averaging: Averaging::Ensemble,
                population: ens.len(),
                truncated,
            })
        }
    }
}

fn truncation(ens: &Ensemble, n: usize) -> Option<usize> {
    if ens.trajs().iter().any(|t| t.n_samples() != n) {
        Some(n)
    } else {
        None
    }
}

fn collapse_time_avg(per_traj: Vec<Vec<f64>>, dt: f64, population: usize) -> Result<StatSeries> {
    let lag = per_traj[0].len();
    let mut mean = Vec::with_capacity(lag);
    let mut spread = Vec::with_capacity(lag);
    for k in 0..lag {
        let vals: Vec<f64> = per_traj.iter().map(|s| s[k]).collect();
        let (m, s) = mean_std(&vals);
        mean.push(m);
        spread.push(s);
    }
    Ok(StatSeries {
        lag_or_time: (0..lag).map(|k| k as f64 * dt).collect(),
        mean,
        spread,
        averaging: Averaging::Time,
        population,
        truncated: None,
    })
}

/// Kurtosis of a set of d-dimensional rows: standardized fourth moment for
/// d = 1, Mardia's multivariate statistic otherwise.
fn kurtosis_of_rows(rows: &[Vec<f64>], time_index: usize) -> Result<f64> {
    let n = rows.len();
    let d = rows[0].len();
    let nf = n as f64;
    if d == 1 {
        let vals: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let (mu, sigma) = mean_std(&vals);
        if sigma == 0.0 {
            return Err(Error::SingularCovariance(time_index));
        }
        let fourth =
            kahan_sum(vals.iter().map(|v| ((v - mu) / sigma).powi(4))) / nf;
        return Ok(fourth);
    }
    let mut mu = vec![0.0; d];
    for (j, m) in mu.iter_mut().enumerate() {
        *m = kahan_sum(rows.iter().map(|r| r[j])) / nf;
    }
    let mut cov = DMatrix::zeros(d, d);
    for r in rows {
        for i in 0..d {
            for j in 0..d {
                cov[(i, j)] += (r[i] - mu[i]) * (r[j] - mu[j]);
            }
        }
    }
    cov /= nf;
    let inv = cov
        .try_inverse()
        .ok_or(Error::SingularCovariance(time_index))?;
    if inv.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularCovariance(time_index));
    }
    let sum = kahan_sum(rows.iter().map(|r| {
        let c = DVector::from_iterator(d, r.iter().zip(&mu).map(|(v, m)| v - m));
        let q = (c.transpose() * &inv * &c)[(0, 0)];
        q * q
    }));
    Ok(sum / nf)
}

/// Kurtosis of the velocity samples. Ensemble mode evaluates the statistic
/// across trajectories at every instant; time mode evaluates it over the time
/// samples of each trajectory and reports mean and spread across the ensemble
/// as a single-point series.
pub fn kurtosis(ens: &Ensemble, time_avg: bool) -> Result<StatSeries> {
    let vels = velocities(ens)?;
    let d = ens.dim();
    if time_avg {
        let vals: Result<Vec<f64>> = vels
            .iter()
            .map(|v| {
                let rows: Vec<Vec<f64>> =
                    v.data().rows().into_iter().map(|r| r.to_vec()).collect();
                kurtosis_of_rows(&rows, 0)
            })
            .collect();
        let vals = vals?;
        let (m, s) = mean_std(&vals);
        return Ok(StatSeries {
            lag_or_time: vec![0.0],
            mean: vec![m],
            spread: vec![s],
            averaging: Averaging::Time,
            population: ens.len(),
            truncated: None,
        });
    }
    let min_n = if d == 1 { 2 } else { d + 2 };
    if ens.len() < min_n {
        return Err(Error::EnsembleTooSmall {
            min: min_n,
            got: ens.len(),
        });
    }
    let n = ens.min_samples();
    ens.require_common_grid(n)?;
    let truncated = truncation(ens, n);
    let times = ens[0].time_grid().materialize(n);
    let mut mean = Vec::with_capacity(n);
    for i in 0..n {
        let rows: Vec<Vec<f64>> = vels.iter().map(|v| v.row(i).to_vec()).collect();
        mean.push(kurtosis_of_rows(&rows, i)?);
    }
    Ok(StatSeries {
        lag_or_time: times.to_vec(),
        mean,
        spread: vec![0.0; n],
        averaging: Averaging::Ensemble,
        population: ens.len(),
        truncated,
    })
}

/// One-sided velocity periodogram averaged over axes and trajectories.
///
/// Per axis, S(f_k) = dt |DFT(v)|^2 / n on the one-sided grid (interior bins
/// doubled), so that sum S * df equals the mean squared component amplitude.
/// With `omega` set the axis is angular frequency and values are divided by
/// 2*pi, preserving that normalization.
pub fn psd(ens: &Ensemble, omega: bool) -> Result<StatSeries> {
    let dt = common_dt(ens)?;
    let vels = velocities(ens)?;
    let n = ens[0].n_samples();
    for t in ens.trajs() {
        if t.n_samples() != n {
            return Err(Error::GridMismatchInEnsemble(0));
        }
    }
    if n < 2 {
        return Err(Error::TooFewSamples {
            scheme: "periodogram",
            min: 2,
            got: n,
        });
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let n_bins = n / 2 + 1;
    let d = ens.dim();
    // One periodogram per (trajectory, axis).
    let mut spectra: Vec<Vec<f64>> = Vec::with_capacity(ens.len() * d);
    for v in &vels {
        for axis in 0..d {
            let mut buf: Vec<Complex<f64>> = v
                .axis(axis)?
                .iter()
                .map(|&x| Complex::new(x, 0.0))
                .collect();
            fft.process(&mut buf);
            let mut s: Vec<f64> = buf[..n_bins]
                .iter()
                .map(|c| dt * c.norm_sqr() / n as f64)
                .collect();
            for (k, sk) in s.iter_mut().enumerate() {
                let is_interior = k > 0 && !(n % 2 == 0 && k == n / 2);
                if is_interior {
                    *sk *= 2.0;
                }
            }
            spectra.push(s);
        }
    }
    let mut mean = Vec::with_capacity(n_bins);
    let mut spread = Vec::with_capacity(n_bins);
    let scale = if omega {
        1.0 / (2.0 * std::f64::consts::PI)
    } else {
        1.0
    };
    for k in 0..n_bins {
        let vals: Vec<f64> = spectra.iter().map(|s| s[k] * scale).collect();
        let (m, s) = mean_std(&vals);
        mean.push(m);
        spread.push(s);
    }
    let df = 1.0 / (n as f64 * dt);
    let freq: Vec<f64> = (0..n_bins)
        .map(|k| {
            let f = k as f64 * df;
            if omega {
                2.0 * std::f64::consts::PI * f
            } else {
                f
            }
        })
        .collect();
    Ok(StatSeries {
        lag_or_time: freq,
        mean,
        spread,
        averaging: Averaging::Ensemble,
        population: ens.len() * d,
        truncated: None,
    })
}

fn build_histogram(samples: &[f64], bins: &BinSpec, normalized: bool) -> Result<HistogramResult> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("histogram sample pool".into()));
    }
    let edges = match bins {
        BinSpec::Edges(e) => {
            if e.len() < 2 || e.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::InvalidParameter {
                    name: "bins",
                    reason: "edges must be strictly increasing with >= 2 entries".into(),
                });
            }
            e.clone()
        }
        BinSpec::Count(b) => {
            if *b == 0 {
                return Err(Error::InvalidParameter {
                    name: "bins",
                    reason: "bin count must be >= 1".into(),
                });
            }
            equal_edges(samples, *b)
        }
        BinSpec::FreedmanDiaconis => {
            let mut sorted = samples.to_vec();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let q = |p: f64| {
                let idx = p * (sorted.len() - 1) as f64;
                let lo = idx.floor() as usize;
                let hi = idx.ceil() as usize;
                let frac = idx - lo as f64;
                sorted[lo] * (1.0 - frac) + sorted[hi] * frac
            };
            let iqr = q(0.75) - q(0.25);
            let width = 2.0 * iqr / (samples.len() as f64).cbrt();
            let span = sorted[sorted.len() - 1] - sorted[0];
            if width <= 0.0 || span <= 0.0 {
                equal_edges(samples, 1)
            } else {
                let b = ((span / width).ceil() as usize).clamp(1, 1024);
                equal_edges(samples, b)
            }
        }
    };
    let (values, _outside) = fill_bins(samples, &edges, normalized);
    Ok(HistogramResult {
        bin_edges: edges,
        values,
        normalized,
        circular: false,
        skipped: 0,
    })
}

fn equal_edges(samples: &[f64], bins: usize) -> Vec<f64> {
    let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
    (0..=bins)
        .map(|i| lo + (hi - lo) * i as f64 / bins as f64)
        .collect()
}

fn fill_bins(samples: &[f64], edges: &[f64], normalized: bool) -> (Vec<f64>, usize) {
    let b = edges.len() - 1;
    let mut counts = vec![0.0f64; b];
    let mut outside = 0usize;
    for &s in samples {
        if s < edges[0] || s > edges[b] {
            outside += 1;
            continue;
        }
        // Upper edge of the last bin is inclusive.
        let idx = edges.partition_point(|&e| e <= s).min(b) - 1;
        counts[idx.min(b - 1)] += 1.0;
    }
    if normalized {
        let total: f64 = counts.iter().sum();
        if total > 0.0 {
            for (i, c) in counts.iter_mut().enumerate() {
                *c /= total * (edges[i + 1] - edges[i]);
            }
        }
    }
    (counts, outside)
}

/// Histogram of the pooled speed |v| over all samples of all trajectories.
pub fn speed_histogram(ens: &Ensemble, bins: &BinSpec, normalized: bool) -> Result<HistogramResult> {
    let vels = velocities(ens)?;
    let mut pool = Vec::new();
    for v in &vels {
        pool.extend(v.norm().into_iter());
    }
    build_histogram(&pool, bins, normalized)
}

/// Circular histogram of angles between consecutive displacement vectors.
/// Zero-length displacements are skipped and counted in `skipped`.
pub fn turning_angles(
    ens: &Ensemble,
    accumulate: bool,
    range: AngleRange,
    bins: Option<usize>,
    normalized: bool,
) -> Result<HistogramResult> {
    if ens.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: ens.dim(),
        });
    }
    let mut pool = Vec::new();
    let mut skipped = 0usize;
    for t in ens.trajs() {
        if t.n_samples() < 3 {
            return Err(Error::TooFewSamples {
                scheme: "turning-angles",
                min: 3,
                got: t.n_samples(),
            });
        }
        let deltas = t.r().delta();
        let mut running = 0.0;
        for i in 0..deltas.nrows() - 1 {
            let a = deltas.row(i);
            let b = deltas.row(i + 1);
            let na = (a[0] * a[0] + a[1] * a[1]).sqrt();
            let nb = (b[0] * b[0] + b[1] * b[1]).sqrt();
            if na == 0.0 || nb == 0.0 {
                skipped += 1;
                continue;
            }
            let cross = a[0] * b[1] - a[1] * b[0];
            let dot = a[0] * b[0] + a[1] * b[1];
            let angle = cross.atan2(dot);
            let value = if accumulate {
                running += angle;
                running
            } else {
                angle
            };
            pool.push(wrap_angle(value, range));
        }
    }
    if pool.is_empty() {
        return Err(Error::EmptyInput("turning-angle pool".into()));
    }
    let b = bins.unwrap_or(36);
    let (lo, hi) = match range {
        AngleRange::Signed => (-std::f64::consts::PI, std::f64::consts::PI),
        AngleRange::Unsigned => (0.0, 2.0 * std::f64::consts::PI),
    };
    let edges: Vec<f64> = (0..=b)
        .map(|i| lo + (hi - lo) * i as f64 / b as f64)
        .collect();
    let (values, _outside) = fill_bins(&pool, &edges, normalized);
    Ok(HistogramResult {
        bin_edges: edges,
        values,
        normalized,
        circular: true,
        skipped,
    })
}

fn wrap_angle(a: f64, range: AngleRange) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let m = a.rem_euclid(two_pi);
    match range {
        AngleRange::Unsigned => m,
        AngleRange::Signed => {
            if m >= std::f64::consts::PI {
                m - two_pi
            } else {
                m
            }
        }
    }
}

/// Queries raw quantity samples from the ensemble, either at given time
/// instants (nearest grid point, no interpolation) or over sliding windows of
/// a fixed lag. Lag mode returns increments for position and window-end
/// values for velocity and speed.
pub fn collect(
    ens: &Ensemble,
    quantity: CollectQuantity,
    selector: &CollectSelector,
) -> Result<CollectResult> {
    let d = ens.dim();
    let cols = match quantity {
        CollectQuantity::Speed => 1,
        _ => d,
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut traj_index = Vec::new();
    let mut sample_index = Vec::new();
    match selector {
        CollectSelector::At(instants) => {
            for &at in instants {
                for (j, t) in ens.trajs().iter().enumerate() {
                    let times = t.times();
                    let n = times.len();
                    if at < times[0] || at > times[n - 1] {
                        return Err(Error::InstantOutOfRange(at));
                    }
                    // Nearest grid point, ties toward the earlier sample.
                    let mut best = 0usize;
                    let mut best_d = f64::INFINITY;
                    for (i, &ti) in times.iter().enumerate() {
                        let dist = (ti - at).abs();
                        if dist < best_d {
                            best_d = dist;
                            best = i;
                        }
                    }
                    rows.push(quantity_row(t, quantity, best)?);
                    traj_index.push(j);
                    sample_index.push(best);
                }
            }
        }
        CollectSelector::Lag(lag) => {
            let lag = *lag;
            for (j, t) in ens.trajs().iter().enumerate() {
                let n = t.n_samples();
                if lag == 0 || lag >= n {
                    return Err(Error::LagOutOfRange { lag, n });
                }
                for i in 0..n - lag {
                    let row = match quantity {
                        CollectQuantity::Position => {
                            let a = t.r().row(i);
                            let b = t.r().row(i + lag);
                            (0..d).map(|k| b[k] - a[k]).collect()
                        }
                        CollectQuantity::Velocity | CollectQuantity::Speed => {
                            quantity_row(t, quantity, i + lag)?
                        }
                    };
                    rows.push(row);
                    traj_index.push(j);
                    sample_index.push(i);
                }
            }
        }
    }
    let mut values = Array2::zeros((rows.len(), cols));
    for (i, row) in rows.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            values[[i, k]] = v;
        }
    }
    Ok(CollectResult {
        values,
        traj_index,
        sample_index,
    })
}

fn quantity_row(
    t: &crate::traj::Trajectory,
    quantity: CollectQuantity,
    i: usize,
) -> Result<Vec<f64>> {
    Ok(match quantity {
        CollectQuantity::Position => t.r().row(i).to_vec(),
        CollectQuantity::Velocity => t.v()?.row(i).to_vec(),
        CollectQuantity::Speed => {
            let row = t.v()?.row(i);
            vec![row.iter().map(|v| v * v).sum::<f64>().sqrt()]
        }
    })
}
