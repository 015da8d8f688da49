use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::emit::{Cell, Meta, Table, Tabular};
use super::stats::{binomial_stderr, median};
use super::{run_trials, ExperimentConfig, TrialRecord};
use crate::analytic::{pmf_sum, supercritical_bounds, LimitLaw, Objective, CRITICAL};
use crate::error::Result;
use crate::instances::Orientation;

/// Slack added to `pi^2/2` in the envelope `(1 + (pi^2/2 + slack)/ln^2 n)/e`.
pub const ENVELOPE_SLACK: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupercriticalReport {
    pub meta: Meta,
    pub orientation: Orientation,
    /// Fraction of trials with `n mu* > 1/e`.
    pub jump_fraction: f64,
    pub jump_stderr: f64,
    /// Limiting value `1 - sum_k p_k`.
    pub analytic_jump: f64,
    pub subcritical_fraction: f64,
    /// Witness lengths of the trials above `1/e`.
    pub conditional_lengths: Vec<usize>,
    pub conditional_median: Option<f64>,
    pub length_lower: f64,
    /// Fraction of conditional lengths at least `length_lower`.
    pub exceeding_length_lower: Option<f64>,
    pub envelope: f64,
    /// Fraction of all trials with `n mu* <= envelope`.
    pub within_envelope: f64,
}

pub fn supercritical_length_experiment(
    n_list: &[usize],
    trials: usize,
    base_seed: u64,
    orientation: Orientation,
    workers: usize,
) -> Result<Vec<SupercriticalReport>> {
    n_list
        .iter()
        .map(|&n| {
            let mut cfg = ExperimentConfig::new(n, trials, orientation, Objective::Mean);
            cfg.base_seed = base_seed;
            cfg.workers = workers;
            let records = run_trials(&cfg)?;
            summarize(&records, &cfg)
        })
        .collect()
}

pub(crate) fn summarize(
    records: &[TrialRecord],
    cfg: &ExperimentConfig,
) -> Result<SupercriticalReport> {
    let n = cfg.n;
    let trials = records.len();
    let bounds = supercritical_bounds(n as u64)?;
    let ln = (n as f64).ln();
    let envelope = (1.0 + (PI * PI / 2.0 + ENVELOPE_SLACK) / (ln * ln)) / std::f64::consts::E;

    let above: Vec<&TrialRecord> = records
        .iter()
        .filter(|r| r.scaled_weight > CRITICAL)
        .collect();
    let below = records
        .iter()
        .filter(|r| r.scaled_weight <= CRITICAL)
        .count();
    let lengths: Vec<usize> = above.iter().map(|r| r.length).collect();
    let jump = above.len() as f64 / trials as f64;
    let exceeding = (!lengths.is_empty()).then(|| {
        lengths
            .iter()
            .filter(|&&k| k as f64 >= bounds.length_lower)
            .count() as f64
            / lengths.len() as f64
    });
    Ok(SupercriticalReport {
        meta: Meta::new(n, trials, cfg.base_seed),
        orientation: cfg.orientation,
        jump_fraction: jump,
        jump_stderr: binomial_stderr(jump, trials),
        analytic_jump: 1.0 - pmf_sum(LimitLaw::new(cfg.orientation, Objective::Mean)),
        subcritical_fraction: below as f64 / trials as f64,
        conditional_median: median(&lengths),
        conditional_lengths: lengths,
        length_lower: bounds.length_lower,
        exceeding_length_lower: exceeding,
        envelope,
        within_envelope: records
            .iter()
            .filter(|r| r.scaled_weight <= envelope)
            .count() as f64
            / trials as f64,
    })
}

impl Tabular for SupercriticalReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "supercritical",
            &[
                "n",
                "trials",
                "jump_fraction",
                "jump_stderr",
                "analytic_jump",
                "conditional_median",
                "length_lower",
                "exceeding_length_lower",
                "envelope",
                "within_envelope",
            ],
        );
        t.push(vec![
            Cell::from(self.meta.n),
            Cell::from(self.meta.trials),
            self.jump_fraction.into(),
            self.jump_stderr.into(),
            self.analytic_jump.into(),
            self.conditional_median.into(),
            self.length_lower.into(),
            self.exceeding_length_lower.into(),
            self.envelope.into(),
            self.within_envelope.into(),
        ]);
        vec![t]
    }
}
