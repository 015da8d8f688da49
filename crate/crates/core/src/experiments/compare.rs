use serde::{Deserialize, Serialize};

use super::emit::{Cell, Meta, Table, Tabular};
use super::stats::binomial_stderr;
use super::{ExperimentConfig, TrialRecord};
use crate::analytic::{limit_cdf, LimitLaw, PmfEvaluator};
use crate::error::{Error, Result};

/// Bins with fewer expected counts than this are pooled into the tail.
const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfRow {
    pub c: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub analytic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfRow {
    pub k: usize,
    pub empirical: f64,
    pub stderr: f64,
    pub analytic: f64,
}

/// Pearson statistic over length bins `k_min..tail_from` plus one tail bin
/// holding every longer length (and, for mean variants, the limiting mass
/// that escapes to infinite length).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub bins: usize,
    pub tail_from: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub meta: Meta,
    pub variant: LimitLaw,
    pub cdf: Vec<CdfRow>,
    pub pmf: Vec<PmfRow>,
    /// Largest `|empirical - analytic|` over the CDF grid.
    pub sup_gap: f64,
    pub chi_square: ChiSquare,
    /// Fractions of trials with scaled weight `<=` and `>` the threshold.
    pub below_threshold: f64,
    pub above_threshold: f64,
}

pub fn compare_to_limit(
    records: &[TrialRecord],
    cfg: &ExperimentConfig,
    variant: LimitLaw,
) -> Result<ComparisonReport> {
    if variant.orientation() != cfg.orientation || variant.objective() != cfg.objective {
        return Err(Error::invalid(format!(
            "variant {variant} does not match a {} {} experiment",
            cfg.orientation, cfg.objective
        )));
    }
    if records.is_empty() {
        return Err(Error::invalid("no trial records"));
    }
    let trials = records.len();
    let frac = |pred: &dyn Fn(&TrialRecord) -> bool| {
        records.iter().filter(|r| pred(r)).count() as f64 / trials as f64
    };

    let mut cdf = Vec::with_capacity(cfg.c_grid.len());
    for &c in &cfg.c_grid {
        let p = frac(&|r| r.scaled_weight <= c);
        cdf.push(CdfRow {
            c,
            empirical: p,
            stderr: binomial_stderr(p, trials),
            analytic: limit_cdf(c, variant)?,
        });
    }
    let sup_gap = cdf
        .iter()
        .map(|r| (r.empirical - r.analytic).abs())
        .fold(0.0, f64::max);

    let k_min = variant.k_min();
    let k_hi = records
        .iter()
        .map(|r| r.length)
        .max()
        .unwrap_or(k_min)
        .max(k_min);
    let mut counts = vec![0usize; k_hi + 1];
    for r in records {
        counts[r.length] += 1;
    }
    let mut ev = PmfEvaluator::new();
    let mut pmf = Vec::with_capacity(k_hi + 1 - k_min);
    for (k, &count) in counts.iter().enumerate().skip(k_min) {
        let p = count as f64 / trials as f64;
        pmf.push(PmfRow {
            k,
            empirical: p,
            stderr: binomial_stderr(p, trials),
            analytic: ev.pmf(k, variant)?,
        });
    }

    let chi_square = chi_square(&counts, trials, k_min, variant, &mut ev)?;
    let below = frac(&|r| r.scaled_weight <= variant.threshold());
    Ok(ComparisonReport {
        meta: Meta::new(cfg.n, trials, cfg.base_seed),
        variant,
        cdf,
        pmf,
        sup_gap,
        chi_square,
        below_threshold: below,
        above_threshold: frac(&|r| r.scaled_weight > variant.threshold()),
    })
}

fn chi_square(
    counts: &[usize],
    trials: usize,
    k_min: usize,
    variant: LimitLaw,
    ev: &mut PmfEvaluator,
) -> Result<ChiSquare> {
    let n = trials as f64;
    let mut statistic = 0.0;
    let mut bins = 0;
    let mut used_mass = 0.0;
    let mut used_obs = 0usize;
    let mut k = k_min;
    loop {
        let expected = n * ev.pmf(k, variant)?;
        if expected < MIN_EXPECTED {
            break;
        }
        let obs = counts.get(k).copied().unwrap_or(0);
        statistic += (obs as f64 - expected).powi(2) / expected;
        used_mass += expected / n;
        used_obs += obs;
        bins += 1;
        k += 1;
    }
    let tail_expected = n * (1.0 - used_mass).max(0.0);
    let tail_obs = (trials - used_obs) as f64;
    if tail_expected > 0.0 {
        statistic += (tail_obs - tail_expected).powi(2) / tail_expected;
        bins += 1;
    }
    Ok(ChiSquare {
        statistic,
        bins,
        tail_from: k,
    })
}

impl Tabular for ComparisonReport {
    fn tables(&self) -> Vec<Table> {
        let v = self.variant.as_str();
        let mut cdf = Table::new("cdf", &["variant", "c", "empirical", "stderr", "analytic"]);
        for r in &self.cdf {
            cdf.push(vec![
                v.into(),
                r.c.into(),
                r.empirical.into(),
                r.stderr.into(),
                r.analytic.into(),
            ]);
        }
        let mut pmf = Table::new("pmf", &["variant", "k", "empirical", "stderr", "analytic"]);
        for r in &self.pmf {
            pmf.push(vec![
                v.into(),
                Cell::from(r.k),
                r.empirical.into(),
                r.stderr.into(),
                r.analytic.into(),
            ]);
        }
        vec![cdf, pmf]
    }
}
