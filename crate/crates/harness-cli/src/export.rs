use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::run::{RunConfig, Trajectory, TrajectoryRecord};

/// Output format for trajectory files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// 17 significant digits: enough to round-trip any f64 exactly.
fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a trajectory in the fixed CSV schema:
/// header `t,loss,step_inf_norm,step_l2_norm,param_0,...,param_{d-1}`,
/// one row per record, floats with 17 significant digits.
pub fn trajectory_to_csv(trajectory: &Trajectory) -> String {
    let dim = trajectory.records.first().map_or(0, |r| r.theta.len());
    let mut out = String::from("t,loss,step_inf_norm,step_l2_norm");
    for i in 0..dim {
        let _ = write!(out, ",param_{i}");
    }
    out.push('\n');
    for record in &trajectory.records {
        let _ = write!(
            out,
            "{},{},{},{}",
            record.t,
            format_value(record.loss),
            format_value(record.step_inf_norm),
            format_value(record.step_l2_norm)
        );
        for x in &record.theta {
            let _ = write!(out, ",{}", format_value(*x));
        }
        out.push('\n');
    }
    out
}

/// Parses a trajectory back from the CSV schema produced by
/// [`trajectory_to_csv`]. Within formatting noise this is the exact
/// inverse: export -> import -> export is byte-identical.
pub fn trajectory_from_csv(path: &Path, text: &str) -> Result<Trajectory> {
    let malformed = |reason: String| Error::MalformedTrajectory {
        path: path.to_path_buf(),
        reason,
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty file".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 5
        || columns[..4] != ["t", "loss", "step_inf_norm", "step_l2_norm"]
        || columns[4..]
            .iter()
            .enumerate()
            .any(|(i, c)| *c != format!("param_{i}"))
    {
        return Err(malformed(format!("unexpected header `{header}`")));
    }
    let dim = columns.len() - 4;

    let mut records = Vec::new();
    for (line_no, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + 4 {
            return Err(malformed(format!(
                "row {} has {} fields, expected {}",
                line_no + 2,
                fields.len(),
                dim + 4
            )));
        }
        let parse = |field: &str| {
            field
                .parse::<f64>()
                .map_err(|e| malformed(format!("row {}: `{field}`: {e}", line_no + 2)))
        };
        let t = fields[0]
            .parse::<u64>()
            .map_err(|e| malformed(format!("row {}: `{}`: {e}", line_no + 2, fields[0])))?;
        records.push(TrajectoryRecord {
            t,
            loss: parse(fields[1])?,
            step_inf_norm: parse(fields[2])?,
            step_l2_norm: parse(fields[3])?,
            theta: fields[4..].iter().map(|f| parse(f)).collect::<Result<_>>()?,
        });
    }
    Ok(Trajectory { records })
}

/// JSON export payload: the records plus the full run config for
/// provenance.
#[derive(Debug, Serialize)]
struct JsonExport<'a> {
    config: &'a RunConfig,
    records: &'a [TrajectoryRecord],
}

pub fn trajectory_to_json(trajectory: &Trajectory, config: &RunConfig) -> String {
    let payload = JsonExport {
        config,
        records: &trajectory.records,
    };
    let mut text = serde_json::to_string_pretty(&payload).expect("trajectory serializes");
    text.push('\n');
    text
}

/// Renders the trajectory in the requested format.
pub fn render_trajectory(trajectory: &Trajectory, config: &RunConfig, format: Format) -> String {
    match format {
        Format::Csv => trajectory_to_csv(trajectory),
        Format::Json => trajectory_to_json(trajectory, config),
    }
}

/// Writes a trajectory file, surfacing I/O failures with the path.
pub fn export_trajectory(
    trajectory: &Trajectory,
    config: &RunConfig,
    format: Format,
    path: &Path,
) -> Result<()> {
    write_text(path, &render_trajectory(trajectory, config, format))
}

/// Reads a trajectory back from a CSV file.
pub fn import_trajectory(path: &Path) -> Result<Trajectory> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        action: "read",
        path: path.to_path_buf(),
        source,
    })?;
    trajectory_from_csv(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        action: "write",
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_json_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        action: "read",
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::ConfigParse {
        path: PathBuf::from(path),
        source,
    })
}

#[cfg(test)]
mod tests {
    use objectives::ObjectiveSpec;
    use optim_core::{Method, OptimizerConfig};

    use super::*;

    fn sample_config() -> RunConfig {
        RunConfig {
            objective: ObjectiveSpec::diagonal_quadratic(vec![1.0, 1.0]),
            optimizer: OptimizerConfig::new(Method::LpAdam, 2.0, 0.05),
            start_point: vec![1.0, -1.0],
            iterations: 1,
            seed: 0,
            output: None,
        }
    }

    fn sample_trajectory() -> Trajectory {
        Trajectory {
            records: vec![TrajectoryRecord {
                t: 1,
                theta: vec![0.5, -0.25],
                loss: 0.15625,
                step_inf_norm: 0.75,
                step_l2_norm: 0.9013878188659973,
            }],
        }
    }

    #[test]
    fn one_record_two_dims_gives_a_two_line_csv() {
        let csv = trajectory_to_csv(&sample_trajectory());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "t,loss,step_inf_norm,step_l2_norm,param_0,param_1");
        assert!(lines[1].starts_with("1,1.5625000000000000e-1,"));
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let csv = trajectory_to_csv(&sample_trajectory());
        let parsed = trajectory_from_csv(Path::new("sample.csv"), &csv).unwrap();
        assert_eq!(parsed, sample_trajectory());
        assert_eq!(trajectory_to_csv(&parsed), csv);
    }

    #[test]
    fn csv_values_survive_with_full_precision() {
        let mut trajectory = sample_trajectory();
        trajectory.records[0].theta = vec![std::f64::consts::PI, -1.0 / 3.0];
        trajectory.records[0].loss = 6.02214076e23;
        trajectory.records[0].step_l2_norm = 5e-324; // smallest subnormal
        let csv = trajectory_to_csv(&trajectory);
        let parsed = trajectory_from_csv(Path::new("sample.csv"), &csv).unwrap();
        assert_eq!(parsed, trajectory);
    }

    #[test]
    fn malformed_csv_is_reported_with_a_reason() {
        let path = Path::new("bad.csv");
        assert!(matches!(
            trajectory_from_csv(path, "wrong,header\n").unwrap_err(),
            Error::MalformedTrajectory { .. }
        ));
        let missing_field = "t,loss,step_inf_norm,step_l2_norm,param_0\n1,0.0,0.0\n";
        assert!(matches!(
            trajectory_from_csv(path, missing_field).unwrap_err(),
            Error::MalformedTrajectory { .. }
        ));
    }

    #[test]
    fn json_export_carries_the_run_config() {
        let config = sample_config();
        let json = trajectory_to_json(&sample_trajectory(), &config);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["config"]["optimizer"]["method"], "lp-adam");
        assert_eq!(value["config"]["iterations"], 1);
        assert_eq!(value["records"][0]["t"], 1);
    }
}
