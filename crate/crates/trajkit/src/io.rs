//! On-disk formats: a versioned JSON trajectory document and a minimal CSV
//! dialect (header `t,x0,...,x{d-1}`, one file per trajectory).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::traj::Trajectory;

/// Current document schema version. Loading a higher major version fails.
pub const SCHEMA_VERSION: &str = "1.0";

pub type Metadata = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum TimeDocument {
    Uniform { dt: f64, t0: f64 },
    Explicit { t: Vec<f64> },
}

/// Serialized form of one trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traj_id: Option<String>,
    pub dim: usize,
    pub time: TimeDocument,
    pub axes: Vec<Vec<f64>>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn check_schema(version: &str) -> Result<()> {
    let major: u32 = version
        .split('.')
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("malformed schema version {version:?}")))?;
    let supported: u32 = SCHEMA_VERSION.split('.').next().unwrap().parse().unwrap();
    if major > supported {
        return Err(Error::UnsupportedSchema {
            got: version.to_string(),
            supported,
        });
    }
    Ok(())
}

pub fn to_document(traj: &Trajectory, metadata: Metadata) -> TrajectoryDocument {
    let axes: Vec<Vec<f64>> = (0..traj.dim())
        .map(|k| traj.r().axis(k).expect("axis in range").to_vec())
        .collect();
    TrajectoryDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        traj_id: traj.traj_id().map(String::from),
        dim: traj.dim(),
        time: match traj.time_grid() {
            TimeGrid::Uniform { dt, t0 } => TimeDocument::Uniform { dt: *dt, t0: *t0 },
            TimeGrid::Explicit(t) => TimeDocument::Explicit { t: t.clone() },
        },
        axes,
        metadata,
    }
}

pub fn from_document(doc: &TrajectoryDocument) -> Result<Trajectory> {
    check_schema(&doc.schema_version)?;
    if doc.axes.len() != doc.dim {
        return Err(Error::Parse(format!(
            "document declares dim {} but carries {} axes",
            doc.dim,
            doc.axes.len()
        )));
    }
    let time = match &doc.time {
        TimeDocument::Uniform { dt, t0 } => TimeGrid::uniform(*dt, *t0)?,
        TimeDocument::Explicit { t } => TimeGrid::explicit(t.clone())?,
    };
    let traj = Trajectory::from_axes(&doc.axes, Some(time), None)?;
    Ok(match &doc.traj_id {
        Some(id) => traj.with_id(id.clone()),
        None => traj,
    })
}

pub fn save_trajectory_json(path: &Path, traj: &Trajectory, metadata: Metadata) -> Result<()> {
    let doc = to_document(traj, metadata);
    let json = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, json)?;
    Ok(())
}

pub fn save_ensemble_json(path: &Path, ens: &Ensemble, metadata: Metadata) -> Result<()> {
    let docs: Vec<TrajectoryDocument> = ens
        .trajs()
        .iter()
        .map(|t| to_document(t, metadata.clone()))
        .collect();
    let json = serde_json::to_string(&docs).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, json)?;
    Ok(())
}

/// Loads either a single trajectory document or an array of them, together
/// with the metadata of the first document.
pub fn load_json(path: &Path) -> Result<(Vec<Trajectory>, Metadata)> {
    let raw = fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
    let docs: Vec<TrajectoryDocument> = if value.is_array() {
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        vec![serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?]
    };
    if docs.is_empty() {
        return Err(Error::EmptyInput(format!("{}", path.display())));
    }
    let metadata = docs[0].metadata.clone();
    let trajs: Result<Vec<Trajectory>> = docs.iter().map(from_document).collect();
    Ok((trajs?, metadata))
}

pub fn load_ensemble_json(path: &Path) -> Result<(Ensemble, Metadata)> {
    let (trajs, meta) = load_json(path)?;
    Ok((Ensemble::new(trajs)?, meta))
}

/// 17 significant decimal digits: enough for exact f64 round-trips.
pub fn format_g17(v: f64) -> String {
    format!("{:.16e}", v)
}

pub fn save_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut out = fs::File::create(path)?;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((0..traj.dim()).map(|k| format!("x{k}")))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    let times = traj.times();
    for i in 0..traj.n_samples() {
        let mut fields = vec![format_g17(times[i])];
        for k in 0..traj.dim() {
            fields.push(format_g17(traj.r().data()[[i, k]]));
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// One CSV file per trajectory inside `dir` (created if needed).
pub fn save_ensemble_csv(dir: &Path, ens: &Ensemble) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (i, t) in ens.trajs().iter().enumerate() {
        save_trajectory_csv(&dir.join(format!("traj_{i:05}.csv")), t)?;
    }
    Ok(())
}

pub fn load_trajectory_csv(path: &Path) -> Result<Trajectory> {
    let raw = fs::read_to_string(path)?;
    let mut lines = raw.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV file".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"t") || cols.len() < 2 {
        return Err(Error::Parse(format!(
            "CSV header must be t,x0,...; got {header:?}"
        )));
    }
    let d = cols.len() - 1;
    let mut times = Vec::new();
    let mut axes = vec![Vec::new(); d];
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != d + 1 {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, got {}",
                lineno + 1,
                d + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad number {s:?}", lineno + 1)))
        };
        times.push(parse(fields[0])?);
        for (k, axis) in axes.iter_mut().enumerate() {
            axis.push(parse(fields[k + 1])?);
        }
    }
    if times.is_empty() {
        return Err(Error::Parse("CSV has no data rows".into()));
    }
    // Reconstruct a uniform grid when the timestamps are evenly spaced.
    let grid = uniform_or_explicit(times)?;
    Trajectory::from_axes(&axes, Some(grid), None)
}

fn uniform_or_explicit(times: Vec<f64>) -> Result<TimeGrid> {
    if times.len() >= 2 {
        let dt = times[1] - times[0];
        let uniform = dt > 0.0
            && times
                .windows(2)
                .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(1.0));
        if uniform {
            let n = times.len();
            let exact_dt = (times[n - 1] - times[0]) / (n - 1) as f64;
            return TimeGrid::uniform(exact_dt, times[0]);
        }
    }
    TimeGrid::explicit(times)
}
