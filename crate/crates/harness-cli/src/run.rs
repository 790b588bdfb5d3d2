use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use objectives::{GradientSource, ObjectiveSpec};
use optim_core::{step, OptimizerConfig, OptimizerState};

use crate::error::{Error, Result};

/// Everything one trajectory run needs. All fields are mandatory in config
/// files except `seed` (default 0) and the optimizer's `epsilon`
/// (default 1e-8); `output` may be null to write to stdout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub objective: ObjectiveSpec<f64>,
    pub optimizer: OptimizerConfig<f64>,
    pub start_point: Vec<f64>,
    pub iterations: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// One step of a recorded run: the iterate after the update, the
/// noise-free loss there, and the update magnitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: u64,
    pub theta: Vec<f64>,
    pub loss: f64,
    pub step_inf_norm: f64,
    pub step_l2_norm: f64,
}

/// Ordered step records, t running from 1 to the configured iteration
/// count.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Trajectory {
    pub records: Vec<TrajectoryRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn final_loss(&self) -> Option<f64> {
        self.records.last().map(|r| r.loss)
    }
}

/// Runs the configured optimizer on the objective from the start point.
///
/// The gradient stream is seeded with `objective.seed ^ seed` so a sweep
/// can re-seed cells without touching the objective spec. Deterministic:
/// the same config produces a bit-identical trajectory.
pub fn run_trajectory(config: &RunConfig) -> Result<Trajectory> {
    if config.iterations == 0 {
        return Err(Error::ZeroIterations);
    }
    let optimizer = config.optimizer.validate()?;
    let mut source = GradientSource::with_seed(&config.objective, config.objective.seed ^ config.seed)?;
    if config.start_point.len() != source.dim() {
        return Err(Error::StartPointDimension {
            expected: source.dim(),
            got: config.start_point.len(),
        });
    }

    let mut theta = config.start_point.clone();
    let mut state = OptimizerState::new(source.dim())?;
    let mut records = Vec::with_capacity(config.iterations as usize);
    for t in 1..=config.iterations {
        let gradient = source.grad(&theta)?;
        let (result, next) = step(&optimizer, &state, &gradient)
            .map_err(|source| Error::StepFailed { iteration: t, source })?;
        state = next;
        for (x, u) in theta.iter_mut().zip(&result.update) {
            *x += u;
        }
        let loss = source.eval_loss(&theta)?;
        records.push(TrajectoryRecord {
            t,
            theta: theta.clone(),
            loss,
            step_inf_norm: result.step_inf_norm,
            step_l2_norm: result.step_l2_norm,
        });
    }
    Ok(Trajectory { records })
}

/// Outcome of a pointwise trajectory comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// max over t of the infinity-norm distance between the iterates.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares two equal-length trajectories pointwise on their iterates.
pub fn compare_trajectories(
    a: &Trajectory,
    b: &Trajectory,
    tolerance: f64,
) -> Result<ComparisonReport> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidTolerance { got: tolerance });
    }
    if a.len() != b.len() {
        return Err(Error::TrajectoryLengthMismatch { a: a.len(), b: b.len() });
    }
    let mut max_deviation = 0.0f64;
    for (ra, rb) in a.records.iter().zip(&b.records) {
        if ra.theta.len() != rb.theta.len() {
            return Err(Error::TrajectoryDimMismatch {
                t: ra.t,
                a: ra.theta.len(),
                b: rb.theta.len(),
            });
        }
        for (x, y) in ra.theta.iter().zip(&rb.theta) {
            max_deviation = max_deviation.max((x - y).abs());
        }
    }
    Ok(ComparisonReport {
        max_deviation,
        tolerance,
        pass: max_deviation <= tolerance,
    })
}
