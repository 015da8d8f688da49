//! Monte Carlo harness: trials over sampled instances, comparison with the
//! limit laws, the Poisson count check, walk-band and supercritical
//! experiments, and CSV/JSON output.
//!
//! Trial `t` always uses seed `derive_seed(base_seed, t)`, and results are
//! merged by trial index, so every report is identical for any worker count.

mod compare;
mod emit;
mod poisson;
pub mod stats;
mod supercritical;
mod walk;

use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::analytic::Objective;
use crate::error::{Error, Result};
use crate::instances::{sample_complete, Orientation};
use crate::par;
use crate::rng::derive_seed;
use crate::solvers::{light_search, min_max_cycle, SolverKind};

pub use compare::{compare_to_limit, CdfRow, ChiSquare, ComparisonReport, PmfRow};
pub use emit::{emit, emit_string, Format, Meta, Table, Tabular};
pub use poisson::{poisson_check, PerLength, PoissonReport, PoissonRow};
pub use supercritical::{supercritical_length_experiment, SupercriticalReport, ENVELOPE_SLACK};
pub use walk::{band_walk_experiment, walk_band_experiment, BandWalkReport, WalkBandReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub orientation: Orientation,
    pub objective: Objective,
    /// Scaled weights `c` (in units of `1/n`) at which CDFs are compared.
    pub c_grid: Vec<f64>,
    pub k_max: usize,
    /// Worker threads; `0` lets the pool decide, `1` runs sequentially.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(n: usize, trials: usize, orientation: Orientation, objective: Objective) -> Self {
        ExperimentConfig {
            n,
            trials,
            base_seed: 0,
            orientation,
            objective,
            c_grid: Vec::new(),
            k_max: 10,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n < self.orientation.min_vertices() {
            return Err(Error::invalid(format!(
                "{} instances need n >= {}",
                self.orientation,
                self.orientation.min_vertices()
            )));
        }
        if self.c_grid.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::invalid("c_grid values must be finite and >= 0"));
        }
        if self.c_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("c_grid must be sorted ascending"));
        }
        Ok(())
    }
}

/// One Monte Carlo outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    /// `n` times the optimum (mean or max weight).
    pub scaled_weight: f64,
    pub length: usize,
    pub solver: SolverKind,
    /// Wall-clock seconds; excluded from [`TrialRecord::outcome`].
    pub elapsed: f64,
}

impl TrialRecord {
    /// Everything except timing, for determinism checks.
    pub fn outcome(&self) -> (usize, u64, usize, SolverKind) {
        (
            self.trial_index,
            self.scaled_weight.to_bits(),
            self.length,
            self.solver,
        )
    }
}

/// Raw trial output with the configuration that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialLog {
    pub meta: Meta,
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
}

impl TrialLog {
    pub fn new(config: &ExperimentConfig, records: Vec<TrialRecord>) -> Self {
        TrialLog {
            meta: Meta::new(config.n, records.len(), config.base_seed),
            config: config.clone(),
            records,
        }
    }
}

impl Tabular for TrialLog {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "trials",
            &["trial", "scaled_weight", "length", "solver", "elapsed"],
        );
        for r in &self.records {
            t.push(vec![
                r.trial_index.into(),
                r.scaled_weight.into(),
                r.length.into(),
                r.solver.as_str().into(),
                r.elapsed.into(),
            ]);
        }
        vec![t]
    }
}

/// Sample and solve `cfg.trials` instances. Mean objectives use the exact
/// light-path search, max objectives the threshold process.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    par::map_indexed(cfg.trials, cfg.workers, |t| run_one(cfg, t))
        .into_iter()
        .collect()
}

fn run_one(cfg: &ExperimentConfig, t: usize) -> Result<TrialRecord> {
    let start = Instant::now();
    let g = sample_complete(cfg.n, cfg.orientation, derive_seed(cfg.base_seed, t as u64))?;
    let r = match cfg.objective {
        Objective::Mean => light_search(&g)?,
        Objective::Max => min_max_cycle(&g)?,
    };
    Ok(TrialRecord {
        trial_index: t,
        scaled_weight: r.scaled(),
        length: r.witness.len(),
        solver: r.solver,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests;
