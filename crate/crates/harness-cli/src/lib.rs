//! Experiment harness for the L^p optimizer family: trajectory runs,
//! learning-rate sweeps, trajectory comparison, and CSV/JSON export.
//!
//! The `lp-harness` binary is a thin CLI over this library; see the
//! repository README for the command surface and config file format.

mod error;
mod export;
mod run;
mod sweep;

pub use error::{Error, Result};
pub use export::{
    export_trajectory, import_trajectory, read_json_config, render_trajectory, trajectory_from_csv,
    trajectory_to_csv, trajectory_to_json, write_text, Format,
};
pub use run::{compare_trajectories, run_trajectory, ComparisonReport, RunConfig, Trajectory, TrajectoryRecord};
pub use sweep::{sweep_lr, Candidate, CandidateBest, SweepCell, SweepConfig, SweepReport, DEFAULT_LR_GRID};
