//! Command-line front end: generate ensembles, compute observables, transform
//! trajectories, and reconstruct lab-frame motion from camera poses.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/validation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trajkit::error::Error;
use trajkit::generators::{
    self, DiffDiffConfig, GeneratorBase, LangevinConfig, RandomWalkConfig, StepLength,
};
use trajkit::io::{self, Metadata};
use trajkit::reconstruct::{
    accumulate_camera_path, estimate_affine, AffinePose, CameraPath, PointCorrespondences,
};
use trajkit::scenarios::{simulate_wheel_video, wheel_efficiency, WheelConfig};
use trajkit::stats::{
    self, AngleRange, AveragingMode, BinSpec, CollectQuantity, CollectResult, CollectSelector,
    HistogramResult, StatSeries,
};
use trajkit::transform::{self, ResampleTarget};
use trajkit::{Ensemble, Trajectory};

#[derive(Parser)]
#[command(name = "trajkit", version, about = "Trajectory generation, statistics and reconstruction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a stochastic trajectory ensemble (JSON output).
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Compute statistical observables over an ensemble (CSV output).
    #[command(subcommand)]
    Stats(StatsCmd),
    /// Transform trajectories (JSON in, JSON out).
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Estimate camera motion and compose lab-frame trajectories.
    #[command(subcommand)]
    Reconstruct(ReconstructCmd),
    /// Synthetic rolling-wheel efficiency pipeline (CSV output).
    Efficiency(EfficiencyArgs),
}

#[derive(Args)]
struct BaseArgs {
    /// Total simulated time.
    #[arg(long = "T")]
    total_time: f64,
    /// Spatial dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Number of trajectories.
    #[arg(long = "N", default_value_t = 1)]
    n_trajs: usize,
    /// Time step.
    #[arg(long)]
    dt: f64,
    /// RNG seed; omitted means a random seed (recorded in the output).
    #[arg(long)]
    seed: Option<u64>,
    /// Output JSON path.
    #[arg(long)]
    out: PathBuf,
}

impl BaseArgs {
    /// Resolves the seed eagerly so it can be recorded in the metadata.
    fn to_base(&self) -> (GeneratorBase, u64) {
        let seed = self.seed.unwrap_or_else(rand::random);
        (
            GeneratorBase {
                total_time: self.total_time,
                dim: self.dim,
                n_trajs: self.n_trajs,
                dt: self.dt,
                seed: Some(seed),
            },
            seed,
        )
    }
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Lazy random walk with per-axis (q, w, p) step probabilities.
    Rw {
        #[command(flatten)]
        base: BaseArgs,
        /// Rows "q,w,p" separated by ';', one per axis (a single row is
        /// shared across axes). Each row must sum to 1.
        #[arg(long, default_value = "0.5,0,0.5")]
        prob: String,
        /// Step length, one value or comma-separated per-axis values.
        #[arg(long, default_value = "1")]
        step_length: String,
    },
    /// Langevin (Ornstein-Uhlenbeck velocity) process.
    Langevin {
        #[command(flatten)]
        base: BaseArgs,
        /// Inverse relaxation time.
        #[arg(long)]
        gamma: f64,
        /// Noise scale.
        #[arg(long)]
        sigma: f64,
        /// Fixed initial velocity "v1,v2,..."; default draws from the
        /// stationary distribution.
        #[arg(long)]
        v0: Option<String>,
    },
    /// Diffusing-diffusivity process.
    Diffdiff {
        #[command(flatten)]
        base: BaseArgs,
        /// Correlation time of the diffusivity.
        #[arg(long)]
        tau: f64,
        /// Noise scale of the auxiliary process.
        #[arg(long)]
        sigma: f64,
    },
}

#[derive(Args)]
struct StatsIo {
    /// Input ensemble (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum StatsCmd {
    /// Velocity autocorrelation function.
    Vacf {
        #[command(flatten)]
        io: StatsIo,
        /// Time-average over sliding windows instead of the ensemble.
        #[arg(long)]
        time_avg: bool,
        /// Maximum lag (samples) for time averaging.
        #[arg(long)]
        lag: Option<usize>,
    },
    /// Mean squared displacement.
    Msd {
        #[command(flatten)]
        io: StatsIo,
        #[arg(long)]
        time_avg: bool,
        #[arg(long)]
        lag: Option<usize>,
    },
    /// Velocity kurtosis across the ensemble.
    Kurtosis {
        #[command(flatten)]
        io: StatsIo,
        /// Also report the running time average of the kurtosis curve.
        #[arg(long)]
        time_avg: bool,
    },
    /// Velocity power spectral density.
    Psd {
        #[command(flatten)]
        io: StatsIo,
        /// Report against angular frequency instead of frequency.
        #[arg(long)]
        omega: bool,
    },
    /// Histogram of instantaneous speeds.
    SpeedHist {
        #[command(flatten)]
        io: StatsIo,
        /// Number of bins; default picks a Freedman-Diaconis width.
        #[arg(long)]
        bins: Option<usize>,
        /// Normalize counts into a density.
        #[arg(long)]
        normalized: bool,
    },
    /// Circular histogram of turning angles (2-D only).
    TurningAngles {
        #[command(flatten)]
        io: StatsIo,
        /// Accumulate angles along each trajectory.
        #[arg(long)]
        accumulate: bool,
        /// Report angles in [0, 2*pi) instead of [-pi, pi).
        #[arg(long)]
        unsigned: bool,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        normalized: bool,
    },
    /// Pool raw samples of a quantity at instants or over a fixed lag.
    Collect {
        #[command(flatten)]
        io: StatsIo,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// Comma-separated time instants (nearest grid point).
        #[arg(long, conflicts_with = "lag")]
        at: Option<String>,
        /// Sliding-window lag in samples.
        #[arg(long)]
        lag: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Position,
    Velocity,
    Speed,
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Exponential convolutional smoothing filter.
    Expfilter {
        #[arg(long)]
        input: PathBuf,
        /// Filter cutoff rate.
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Polynomial resampling onto a new time grid.
    Resample {
        #[arg(long)]
        input: PathBuf,
        /// New uniform time step.
        #[arg(long, conflicts_with = "new_times")]
        new_dt: Option<f64>,
        /// Explicit comma-separated target times.
        #[arg(long)]
        new_times: Option<String>,
        /// Interpolation order.
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Keep every step-th sample.
    Subsample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ReconstructCmd {
    /// Fit per-frame affine camera poses from point correspondences.
    Affine {
        /// JSON array of {src: [[x,y],...], dst: [[x,y],...]} objects.
        #[arg(long)]
        correspondences: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        mse_threshold: f64,
        #[arg(long, default_value_t = 0.05)]
        scale_threshold: f64,
        /// Output JSON path for the pose list.
        #[arg(long)]
        out: PathBuf,
    },
    /// Accumulate poses into a camera path and move an object trajectory
    /// into the lab frame.
    Compose {
        /// JSON pose list produced by `reconstruct affine`.
        #[arg(long)]
        poses: PathBuf,
        /// Object-in-camera trajectory (2-D JSON document).
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        fps: Option<f64>,
        /// Keep going through poses flagged invalid.
        #[arg(long)]
        allow_invalid: bool,
        #[arg(long, default_value_t = 0.0)]
        anchor_alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        anchor_x: f64,
        #[arg(long, default_value_t = 0.0)]
        anchor_y: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct EfficiencyArgs {
    /// Constant slip fraction driving the simulation.
    #[arg(long, default_value_t = 0.85)]
    slip: f64,
    #[arg(long, default_value_t = 4.0)]
    omega: f64,
    #[arg(long, default_value_t = 0.07)]
    wheel_radius: f64,
    #[arg(long, default_value_t = 0.039)]
    led_offset: f64,
    #[arg(long, default_value_t = 0.5)]
    pivot_arm: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long = "T", default_value_t = 2.0)]
    total_time: f64,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("TRAJKIT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are successes, anything else is usage.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate(cmd) => run_generate(cmd),
        Command::Stats(cmd) => run_stats(cmd),
        Command::Transform(cmd) => run_transform(cmd),
        Command::Reconstruct(cmd) => run_reconstruct(cmd),
        Command::Efficiency(args) => run_efficiency(args),
    }
}

fn parse_f64_list(s: &str, name: &'static str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| Error::InvalidParameter {
                name,
                reason: format!("bad number {v:?}"),
            })
        })
        .collect()
}

fn parse_prob(s: &str, dim: usize) -> Result<Vec<[f64; 3]>, Error> {
    let mut rows = Vec::new();
    for row in s.split(';') {
        let vals = parse_f64_list(row, "prob")?;
        if vals.len() != 3 {
            return Err(Error::InvalidParameter {
                name: "prob",
                reason: format!("each row needs exactly 3 entries, got {}", vals.len()),
            });
        }
        rows.push([vals[0], vals[1], vals[2]]);
    }
    if rows.len() == 1 && dim > 1 {
        rows = vec![rows[0]; dim];
    }
    Ok(rows)
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn generation_metadata(generator: &str, seed: u64) -> Metadata {
    let mut meta = Metadata::new();
    meta.insert("command".into(), command_line());
    meta.insert("generator".into(), generator.into());
    meta.insert("seed".into(), seed.to_string());
    meta.insert("schema_version".into(), io::SCHEMA_VERSION.into());
    meta
}

fn run_generate(cmd: GenerateCmd) -> Result<(), Error> {
    let (ens, out, meta) = match cmd {
        GenerateCmd::Rw {
            base,
            prob,
            step_length,
        } => {
            let (gbase, seed) = base.to_base();
            let prob = parse_prob(&prob, gbase.dim)?;
            let mut lengths = parse_f64_list(&step_length, "step_length")?;
            if lengths.len() == 1 && gbase.dim > 1 {
                lengths = vec![lengths[0]; gbase.dim];
            }
            let mut cfg = RandomWalkConfig::new(gbase, prob);
            cfg.step_length = StepLength::Constant(lengths);
            (
                generators::generate_random_walk(&cfg)?,
                base.out,
                generation_metadata("rw", seed),
            )
        }
        GenerateCmd::Langevin {
            base,
            gamma,
            sigma,
            v0,
        } => {
            let (gbase, seed) = base.to_base();
            let mut cfg = LangevinConfig::new(gbase, gamma, sigma);
            if let Some(v0) = v0 {
                cfg.v0 = generators::InitialState::Fixed(parse_f64_list(&v0, "v0")?);
            }
            (
                generators::generate_langevin(&cfg)?,
                base.out,
                generation_metadata("langevin", seed),
            )
        }
        GenerateCmd::Diffdiff { base, tau, sigma } => {
            let (gbase, seed) = base.to_base();
            let cfg = DiffDiffConfig::new(gbase, tau, sigma);
            (
                generators::generate_diffdiff(&cfg)?,
                base.out,
                generation_metadata("diffdiff", seed),
            )
        }
    };
    io::save_ensemble_json(&out, &ens, meta)
}

/// Writes text to the path, or stdout when absent.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            use std::io::Write;
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn provenance_header(meta: &Metadata) -> String {
    let mut s = format!("# trajkit {}\n# schema_version {}\n", command_line(), io::SCHEMA_VERSION);
    for (k, v) in meta {
        s.push_str(&format!("# input {k}={v}\n"));
    }
    s
}

fn series_csv(series: &StatSeries, meta: &Metadata, axis_name: &str) -> String {
    let mut s = provenance_header(meta);
    s.push_str(&format!("{axis_name},mean,spread\n"));
    for i in 0..series.mean.len() {
        s.push_str(&format!(
            "{},{},{}\n",
            io::format_g17(series.lag_or_time[i]),
            io::format_g17(series.mean[i]),
            io::format_g17(series.spread[i]),
        ));
    }
    s
}

fn histogram_csv(hist: &HistogramResult, meta: &Metadata) -> String {
    let mut s = provenance_header(meta);
    if hist.skipped > 0 {
        s.push_str(&format!("# skipped {}\n", hist.skipped));
    }
    s.push_str(if hist.normalized {
        "bin_left,bin_right,density\n"
    } else {
        "bin_left,bin_right,count\n"
    });
    for i in 0..hist.values.len() {
        s.push_str(&format!(
            "{},{},{}\n",
            io::format_g17(hist.bin_edges[i]),
            io::format_g17(hist.bin_edges[i + 1]),
            io::format_g17(hist.values[i]),
        ));
    }
    s
}

fn collect_csv(result: &CollectResult, meta: &Metadata) -> String {
    let mut s = provenance_header(meta);
    let cols: Vec<String> = (0..result.values.ncols()).map(|k| format!("v{k}")).collect();
    s.push_str(&format!("traj,sample,{}\n", cols.join(",")));
    for i in 0..result.values.nrows() {
        let vals: Vec<String> = (0..result.values.ncols())
            .map(|k| io::format_g17(result.values[[i, k]]))
            .collect();
        s.push_str(&format!(
            "{},{},{}\n",
            result.traj_index[i],
            result.sample_index[i],
            vals.join(","),
        ));
    }
    s
}

fn averaging_mode(time_avg: bool, lag: Option<usize>, n: usize) -> AveragingMode {
    if time_avg {
        AveragingMode::TimeAvg {
            lag: lag.unwrap_or(n / 4),
        }
    } else {
        AveragingMode::Ensemble
    }
}

fn run_stats(cmd: StatsCmd) -> Result<(), Error> {
    match cmd {
        StatsCmd::Vacf { io: sio, time_avg, lag } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let mode = averaging_mode(time_avg, lag, ens.min_samples());
            let series = stats::vacf(&ens, mode)?;
            emit(&sio.out, &series_csv(&series, &meta, "lag_time"))
        }
        StatsCmd::Msd { io: sio, time_avg, lag } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let mode = averaging_mode(time_avg, lag, ens.min_samples());
            let series = stats::msd(&ens, mode)?;
            emit(&sio.out, &series_csv(&series, &meta, "lag_time"))
        }
        StatsCmd::Kurtosis { io: sio, time_avg } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let series = stats::kurtosis(&ens, time_avg)?;
            emit(&sio.out, &series_csv(&series, &meta, "time"))
        }
        StatsCmd::Psd { io: sio, omega } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let series = stats::psd(&ens, omega)?;
            let axis = if omega { "omega" } else { "frequency" };
            emit(&sio.out, &series_csv(&series, &meta, axis))
        }
        StatsCmd::SpeedHist {
            io: sio,
            bins,
            normalized,
        } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let spec = match bins {
                Some(b) => BinSpec::Count(b),
                None => BinSpec::FreedmanDiaconis,
            };
            let hist = stats::speed_histogram(&ens, &spec, normalized)?;
            emit(&sio.out, &histogram_csv(&hist, &meta))
        }
        StatsCmd::TurningAngles {
            io: sio,
            accumulate,
            unsigned,
            bins,
            normalized,
        } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let range = if unsigned {
                AngleRange::Unsigned
            } else {
                AngleRange::Signed
            };
            let hist = stats::turning_angles(&ens, accumulate, range, bins, normalized)?;
            emit(&sio.out, &histogram_csv(&hist, &meta))
        }
        StatsCmd::Collect {
            io: sio,
            quantity,
            at,
            lag,
        } => {
            let (ens, meta) = io::load_ensemble_json(&sio.input)?;
            let selector = match (at, lag) {
                (Some(at), None) => CollectSelector::At(parse_f64_list(&at, "at")?),
                (None, Some(lag)) => CollectSelector::Lag(lag),
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "collect",
                        reason: "exactly one of --at and --lag is required".into(),
                    })
                }
            };
            let quantity = match quantity {
                QuantityArg::Position => CollectQuantity::Position,
                QuantityArg::Velocity => CollectQuantity::Velocity,
                QuantityArg::Speed => CollectQuantity::Speed,
            };
            let result = stats::collect(&ens, quantity, &selector)?;
            emit(&sio.out, &collect_csv(&result, &meta))
        }
    }
}

fn transform_each(
    input: &PathBuf,
    out: &PathBuf,
    f: impl Fn(&Trajectory) -> Result<Trajectory, Error>,
) -> Result<(), Error> {
    let (trajs, mut meta) = io::load_json(input)?;
    let transformed: Result<Vec<Trajectory>, Error> = trajs.iter().map(&f).collect();
    meta.insert("transform_command".into(), command_line());
    let ens = Ensemble::new(transformed?)?;
    if ens.len() == 1 {
        io::save_trajectory_json(out, &ens.trajs()[0], meta)
    } else {
        io::save_ensemble_json(out, &ens, meta)
    }
}

fn run_transform(cmd: TransformCmd) -> Result<(), Error> {
    match cmd {
        TransformCmd::Expfilter { input, omega, out } => {
            transform_each(&input, &out, |t| transform::exp_convolutional_filter(t, omega))
        }
        TransformCmd::Resample {
            input,
            new_dt,
            new_times,
            order,
            out,
        } => {
            let target = match (new_dt, new_times) {
                (Some(dt), None) => ResampleTarget::NewDt(dt),
                (None, Some(ts)) => ResampleTarget::NewTimes(parse_f64_list(&ts, "new_times")?),
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "resample",
                        reason: "exactly one of --new-dt and --new-times is required".into(),
                    })
                }
            };
            transform_each(&input, &out, |t| transform::resample(t, &target, order))
        }
        TransformCmd::Subsample { input, step, out } => {
            transform_each(&input, &out, |t| transform::subsample(t, step))
        }
    }
}

fn run_reconstruct(cmd: ReconstructCmd) -> Result<(), Error> {
    match cmd {
        ReconstructCmd::Affine {
            correspondences,
            mse_threshold,
            scale_threshold,
            out,
        } => {
            let raw = std::fs::read_to_string(&correspondences)?;
            let corr: Vec<PointCorrespondences> =
                serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
            let poses: Result<Vec<AffinePose>, Error> = corr
                .iter()
                .map(|c| estimate_affine(c, mse_threshold, scale_threshold))
                .collect();
            let json = serde_json::to_string_pretty(&poses?)
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(std::fs::write(&out, json)?)
        }
        ReconstructCmd::Compose {
            poses,
            object,
            fps,
            allow_invalid,
            anchor_alpha,
            anchor_x,
            anchor_y,
            out,
        } => {
            let raw = std::fs::read_to_string(&poses)?;
            let poses: Vec<AffinePose> =
                serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
            let path: CameraPath =
                accumulate_camera_path(&poses, (anchor_alpha, [anchor_x, anchor_y]), allow_invalid)?;
            let (trajs, meta) = io::load_json(&object)?;
            let obj = &trajs[0];
            if obj.dim() != 2 {
                return Err(Error::WrongDimension {
                    expected: 2,
                    got: obj.dim(),
                });
            }
            let r_oc: Vec<[f64; 2]> = (0..obj.n_samples())
                .map(|i| {
                    let row = obj.r().row(i);
                    [row[0], row[1]]
                })
                .collect();
            let lab = trajkit::reconstruct::object_to_lab(&r_oc, &path, fps)?;
            io::save_trajectory_json(&out, &lab, meta)
        }
    }
}

fn run_efficiency(args: EfficiencyArgs) -> Result<(), Error> {
    let cfg = WheelConfig {
        omega: args.omega,
        wheel_radius: args.wheel_radius,
        led_offset: args.led_offset,
        pivot_arm: args.pivot_arm,
        dt: args.dt,
        total_time: args.total_time,
    };
    let slip = args.slip;
    if !(slip > 0.0 && slip <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "slip",
            reason: "must lie in (0, 1]".into(),
        });
    }
    let (led, pivot) = simulate_wheel_video(&cfg, |_| slip)?;
    let (times, eff) = wheel_efficiency(&led, &pivot, cfg.led_offset, cfg.omega, cfg.wheel_radius)?;
    let mut s = format!("# trajkit {}\n# schema_version {}\n", command_line(), io::SCHEMA_VERSION);
    s.push_str("time,efficiency\n");
    for (t, e) in times.iter().zip(&eff) {
        s.push_str(&format!("{},{}\n", io::format_g17(*t), io::format_g17(*e)));
    }
    emit(&args.out, &s)
}
