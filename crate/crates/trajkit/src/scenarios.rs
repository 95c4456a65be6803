//! End-to-end pipelines built from the core operations, used by the CLI and
//! the acceptance suite: the rolling-wheel efficiency estimate.

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::traj::{CombineOp, Trajectory};

/// Synthetic rolling-wheel experiment: a wheel driven at constant angular
/// velocity moves around a central pivot, with an LED mounted at a fixed
/// radial offset from the wheel center. Slippage makes the actual linear
/// speed a fraction (the slip profile) of the ideal omega * R.
#[derive(Debug, Clone)]
pub struct WheelConfig {
    /// Wheel spin angular velocity, rad/s.
    pub omega: f64,
    /// Wheel radius, m.
    pub wheel_radius: f64,
    /// Radial LED-to-wheel-center distance, m.
    pub led_offset: f64,
    /// Distance of the wheel center from the pivot, m.
    pub pivot_arm: f64,
    pub dt: f64,
    pub total_time: f64,
}

impl Default for WheelConfig {
    fn default() -> Self {
        WheelConfig {
            omega: 4.0,
            wheel_radius: 0.07,
            led_offset: 0.039,
            pivot_arm: 0.5,
            dt: 1e-3,
            total_time: 2.0,
        }
    }
}

/// Simulated LED and pivot trajectories in the image frame under the given
/// slip profile (efficiency in (0, 1] as a function of time).
pub fn simulate_wheel_video(
    cfg: &WheelConfig,
    slip: impl Fn(f64) -> f64,
) -> Result<(Trajectory, Trajectory)> {
    if !(cfg.omega > 0.0 && cfg.wheel_radius > 0.0 && cfg.pivot_arm > cfg.led_offset) {
        return Err(Error::InvalidParameter {
            name: "wheel",
            reason: "needs omega > 0, wheel_radius > 0, pivot_arm > led_offset".into(),
        });
    }
    let n = (cfg.total_time / cfg.dt).round() as usize + 1;
    // The LED rides at pivot_arm - led_offset from the pivot; the wheel
    // center angular position integrates v(t) / pivot_arm.
    let led_radius = cfg.pivot_arm - cfg.led_offset;
    let pivot = [1.0, 1.5]; // arbitrary image-frame pivot position
    let mut phi = 0.0_f64;
    let mut led_x = Vec::with_capacity(n);
    let mut led_y = Vec::with_capacity(n);
    for i in 0..n {
        led_x.push(pivot[0] + led_radius * phi.cos());
        led_y.push(pivot[1] + led_radius * phi.sin());
        let t = i as f64 * cfg.dt;
        let speed = slip(t) * cfg.omega * cfg.wheel_radius;
        phi += speed / cfg.pivot_arm * cfg.dt;
    }
    let grid = TimeGrid::uniform(cfg.dt, 0.0)?;
    let led = Trajectory::from_axes(&[led_x, led_y], Some(grid.clone()), None)?;
    let pivot_traj = Trajectory::from_axes(
        &[vec![pivot[0]; n], vec![pivot[1]; n]],
        Some(grid),
        None,
    )?;
    Ok((led, pivot_traj))
}

/// The rolling-efficiency pipeline: center the LED on the pivot, shift the
/// radius out to the wheel center, reference to the starting position, and
/// divide the measured speed by the ideal omega * R.
pub fn wheel_efficiency(
    led: &Trajectory,
    pivot: &Trajectory,
    led_offset: f64,
    omega: f64,
    wheel_radius: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let led_centered = led.combine(pivot, CombineOp::Sub)?;
    let wheel_centered = led_centered.add_polar_offset(led_offset, 0.0)?;
    let start = wheel_centered.r().row(0).to_vec();
    let wheel = wheel_centered.shift_scale(&[-start[0], -start[1]], &[1.0])?;
    let v_actual = wheel.v()?.norm();
    let v_max = omega * wheel_radius;
    let times = wheel.times().to_vec();
    let efficiency = v_actual.iter().map(|v| v / v_max).collect();
    Ok((times, efficiency))
}
