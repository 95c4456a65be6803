#ifndef TRAJKIT_H
#define TRAJKIT_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by fallible functions.
 */
typedef enum TkStatus {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_ARGUMENT = 2,
  TK_STATUS_COMPUTATION_ERROR = 3,
} TkStatus;

/**
 * Opaque ensemble handle.
 */
typedef struct TkEnsemble TkEnsemble;

/**
 * Opaque statistics-series handle.
 */
typedef struct TkSeries TkSeries;

/**
 * Opaque trajectory handle.
 */
typedef struct TkTrajectory TkTrajectory;

/**
 * Estimated per-frame camera pose (plain struct, no handle needed).
 */
typedef struct TkAffinePose {
  double theta;
  double tx;
  double ty;
  double scale;
  double mse;
  /**
   * 1 when the pose passes the mse/scale validity thresholds.
   */
  int32_t valid;
} TkAffinePose;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `len` bytes). Returns the full message length including the
 * terminator, or 0 when no error is recorded. `buf` may be null to query the
 * required size.
 */
uintptr_t tk_last_error_message(char *buf, uintptr_t len);

/**
 * Creates a trajectory from a row-major `n_samples x dim` position buffer on
 * a uniform time grid. Returns null on failure.
 */
struct TkTrajectory *tk_trajectory_new(const double *data,
                                       uintptr_t n_samples,
                                       uintptr_t dim,
                                       double dt,
                                       double t0);

void tk_trajectory_free(struct TkTrajectory *traj);

uintptr_t tk_trajectory_n_samples(const struct TkTrajectory *traj);

uintptr_t tk_trajectory_dim(const struct TkTrajectory *traj);

/**
 * Copies the positions into `out` (row-major, `n_samples * dim` doubles).
 */
enum TkStatus tk_trajectory_positions(const struct TkTrajectory *traj,
                                      double *out,
                                      uintptr_t out_len);

/**
 * Copies the velocity samples into `out` (row-major, `n_samples * dim`).
 */
enum TkStatus tk_trajectory_velocity(const struct TkTrajectory *traj,
                                     double *out,
                                     uintptr_t out_len);

/**
 * Keeps every `step`-th sample of the trajectory. Returns null on failure.
 */
struct TkTrajectory *tk_trajectory_subsample(const struct TkTrajectory *traj, uintptr_t step);

/**
 * Applies the exponential convolutional smoothing filter. Returns null on
 * failure.
 */
struct TkTrajectory *tk_trajectory_exp_filter(const struct TkTrajectory *traj, double omega);

/**
 * Generates a lazy random walk ensemble. `prob` is a row-major `dim x 3`
 * buffer of per-axis (q, w, p) step probabilities; each row must sum to 1.
 * Returns null on failure.
 */
struct TkEnsemble *tk_generate_random_walk(double total_time,
                                           uintptr_t dim,
                                           uintptr_t n_trajs,
                                           double dt,
                                           uint64_t seed,
                                           const double *prob);

/**
 * Generates a Langevin ensemble with stationary initial velocities.
 * Returns null on failure.
 */
struct TkEnsemble *tk_generate_langevin(double total_time,
                                        uintptr_t dim,
                                        uintptr_t n_trajs,
                                        double dt,
                                        uint64_t seed,
                                        double gamma,
                                        double sigma);

/**
 * Generates a diffusing-diffusivity ensemble. Returns null on failure.
 */
struct TkEnsemble *tk_generate_diffdiff(double total_time,
                                        uintptr_t dim,
                                        uintptr_t n_trajs,
                                        double dt,
                                        uint64_t seed,
                                        double tau,
                                        double sigma);

void tk_ensemble_free(struct TkEnsemble *ens);

uintptr_t tk_ensemble_len(const struct TkEnsemble *ens);

/**
 * Returns an owned copy of trajectory `index`, or null when out of range.
 */
struct TkTrajectory *tk_ensemble_get(const struct TkEnsemble *ens, uintptr_t index);

/**
 * Velocity autocorrelation function; `lag` is used when `time_avg` != 0.
 * Returns null on failure.
 */
struct TkSeries *tk_vacf(const struct TkEnsemble *ens, int32_t time_avg, uintptr_t lag);

/**
 * Mean squared displacement; `lag` is used when `time_avg` != 0.
 * Returns null on failure.
 */
struct TkSeries *tk_msd(const struct TkEnsemble *ens, int32_t time_avg, uintptr_t lag);

/**
 * Velocity kurtosis over time. Returns null on failure.
 */
struct TkSeries *tk_kurtosis(const struct TkEnsemble *ens, int32_t time_avg);

/**
 * Velocity power spectral density; `omega` != 0 uses angular frequency.
 * Returns null on failure.
 */
struct TkSeries *tk_psd(const struct TkEnsemble *ens, int32_t omega);

void tk_series_free(struct TkSeries *series);

uintptr_t tk_series_len(const struct TkSeries *series);

/**
 * Copies the lag/time (or frequency) axis into `out`.
 */
enum TkStatus tk_series_axis(const struct TkSeries *series, double *out, uintptr_t out_len);

/**
 * Copies the mean values into `out`.
 */
enum TkStatus tk_series_mean(const struct TkSeries *series, double *out, uintptr_t out_len);

/**
 * Copies the per-point spread (population standard deviation) into `out`.
 */
enum TkStatus tk_series_spread(const struct TkSeries *series, double *out, uintptr_t out_len);

/**
 * Fits an affine camera pose from `k` point correspondences. `src` and `dst`
 * are row-major `k x 2` buffers.
 */
enum TkStatus tk_estimate_affine(const double *src,
                                 const double *dst,
                                 uintptr_t k,
                                 double mse_threshold,
                                 double scale_threshold,
                                 struct TkAffinePose *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRAJKIT_H */
