use serde::{Deserialize, Serialize};

use optim_core::Method;

use crate::error::{Error, Result};
use crate::run::{run_trajectory, RunConfig};

/// The stock learning-rate grid: five values, each roughly triple the
/// previous, spanning two orders of magnitude.
pub const DEFAULT_LR_GRID: [f64; 5] = [3e-5, 1e-4, 3e-4, 1e-3, 3e-3];

/// One (method, p) combination entered in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub method: Method,
    pub p: f64,
}

/// Sweep input: a base run plus the grid and candidate list. The base
/// run's method, p, and alpha are overwritten per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub base: RunConfig,
    #[serde(default = "default_grid")]
    pub grid: Vec<f64>,
    pub candidates: Vec<Candidate>,
}

fn default_grid() -> Vec<f64> {
    DEFAULT_LR_GRID.to_vec()
}

/// Final loss of one sweep cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub method: Method,
    pub p: f64,
    pub alpha: f64,
    /// Noise-free loss at the last iterate.
    pub final_loss: f64,
}

/// Winning learning rate for one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateBest {
    pub method: Method,
    pub p: f64,
    pub best_alpha: f64,
    pub final_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Every (candidate, alpha) cell, candidates outermost, alphas in grid
    /// order.
    pub cells: Vec<SweepCell>,
    pub best: Vec<CandidateBest>,
}

/// Runs every (candidate, alpha) cell and selects per candidate the alpha
/// with the smallest final noise-free loss, ties broken toward smaller
/// alpha.
///
/// Each cell owns its RNG stream, seeded `base.seed ^ cell_index`, so
/// results do not depend on execution order.
pub fn sweep_lr(base: &RunConfig, grid: &[f64], candidates: &[Candidate]) -> Result<SweepReport> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }

    let mut cells = Vec::with_capacity(grid.len() * candidates.len());
    let mut best = Vec::with_capacity(candidates.len());
    for (candidate_index, candidate) in candidates.iter().enumerate() {
        let mut winner: Option<CandidateBest> = None;
        for (alpha_index, &alpha) in grid.iter().enumerate() {
            let cell_index = (candidate_index * grid.len() + alpha_index) as u64;
            let mut config = base.clone();
            config.optimizer.method = candidate.method;
            config.optimizer.p = candidate.p;
            config.optimizer.alpha = alpha;
            config.optimizer.bias_correction =
                matches!(candidate.method, Method::LpAdam | Method::AdaMax);
            config.seed = base.seed ^ cell_index;

            let trajectory = run_trajectory(&config).map_err(|source| Error::SweepCellFailed {
                method: candidate.method,
                p: candidate.p,
                alpha,
                source: Box::new(source),
            })?;
            let final_loss = trajectory.final_loss().expect("iterations >= 1");
            cells.push(SweepCell {
                method: candidate.method,
                p: candidate.p,
                alpha,
                final_loss,
            });

            // Strict less-than over ascending alphas keeps the smallest
            // alpha on ties; total_cmp sorts NaN losses as worst.
            let better = winner
                .map(|w| final_loss.total_cmp(&w.final_loss).is_lt())
                .unwrap_or(true);
            if better {
                winner = Some(CandidateBest {
                    method: candidate.method,
                    p: candidate.p,
                    best_alpha: alpha,
                    final_loss,
                });
            }
        }
        best.push(winner.expect("grid is non-empty"));
    }
    Ok(SweepReport { cells, best })
}
