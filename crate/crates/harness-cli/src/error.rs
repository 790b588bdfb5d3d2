use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid optimizer config: {0}")]
    Optimizer(#[from] optim_core::Error),

    #[error("invalid objective: {0}")]
    Objective(#[from] objectives::Error),

    #[error("optimizer failed at iteration {iteration}: {source}")]
    StepFailed {
        iteration: u64,
        source: optim_core::Error,
    },

    #[error("start point has length {got}, expected the objective dimension {expected}")]
    StartPointDimension { expected: usize, got: usize },

    #[error("iterations must be at least 1")]
    ZeroIterations,

    #[error("trajectories have different lengths ({a} vs {b})")]
    TrajectoryLengthMismatch { a: usize, b: usize },

    #[error("trajectory records at t = {t} have different dimensions ({a} vs {b})")]
    TrajectoryDimMismatch { t: u64, a: usize, b: usize },

    #[error("comparison tolerance must be a non-negative finite real, got {got}")]
    InvalidTolerance { got: f64 },

    #[error("sweep grid is empty")]
    EmptyGrid,

    #[error("sweep has no candidates")]
    NoCandidates,

    #[error("sweep cell (method {method}, p {p}, alpha {alpha}) failed: {source}")]
    SweepCellFailed {
        method: optim_core::Method,
        p: f64,
        alpha: f64,
        source: Box<Error>,
    },

    #[error("malformed trajectory file {path}: {reason}")]
    MalformedTrajectory { path: PathBuf, reason: String },

    #[error("invalid config file {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("failed to {action} {path}: {source}")]
    Io {
        action: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    /// Machine-readable error category the CLI reports on stderr.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Optimizer(_) | Error::StepFailed { .. } => "optimizer",
            Error::Objective(_) => "objective",
            Error::StartPointDimension { .. }
            | Error::ZeroIterations
            | Error::InvalidTolerance { .. }
            | Error::EmptyGrid
            | Error::NoCandidates
            | Error::ConfigParse { .. } => "config",
            Error::TrajectoryLengthMismatch { .. }
            | Error::TrajectoryDimMismatch { .. }
            | Error::MalformedTrajectory { .. } => "trajectory",
            Error::SweepCellFailed { source, .. } => source.category(),
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
