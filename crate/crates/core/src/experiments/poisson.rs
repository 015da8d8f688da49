use serde::{Deserialize, Serialize};

use super::emit::{Cell, Meta, Table, Tabular};
use super::stats::{mean_stderr, poisson_pmf, tv_to_poisson};
use crate::analytic::expected_light_count_exact;
use crate::error::{Error, Result};
use crate::instances::{sample_complete, Orientation};
use crate::par;
use crate::rng::derive_seed;
use crate::solvers::count_light_cycles;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoissonRow {
    pub count: usize,
    pub empirical_prob: f64,
    pub poisson_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerLength {
    pub k: usize,
    pub mean: f64,
    pub stderr: f64,
    pub exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoissonReport {
    pub meta: Meta,
    pub orientation: Orientation,
    pub c0: f64,
    pub k_max: usize,
    /// Distribution of the total light-cycle count per instance.
    pub rows: Vec<PoissonRow>,
    pub mean_count: f64,
    pub mean_stderr: f64,
    /// `sum_k` of the exact finite-`n` expectations; the Poisson mean.
    pub exact_mean: f64,
    pub per_length: Vec<PerLength>,
    /// Includes the Poisson mass above the largest observed count.
    pub tv_distance: f64,
}

/// Count `c0`-light cycles of length `<= k_max` in `trials` instances and
/// compare the total with a Poisson law of the exact expected mean.
pub fn poisson_check(
    n: usize,
    c0: f64,
    k_max: usize,
    trials: usize,
    base_seed: u64,
    orientation: Orientation,
    workers: usize,
) -> Result<PoissonReport> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let k_min = orientation.min_cycle_len();
    let k_max = k_max.min(n);
    let censuses: Vec<Vec<u64>> = par::map_indexed(trials, workers, |t| {
        let g = sample_complete(n, orientation, derive_seed(base_seed, t as u64))?;
        let c = count_light_cycles(&g, c0, k_max)?;
        Ok((k_min..=k_max).map(|k| c.count(k)).collect())
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let totals: Vec<usize> = censuses
        .iter()
        .map(|c| c.iter().sum::<u64>() as usize)
        .collect();
    let top = totals.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0usize; top + 1];
    for &t in &totals {
        hist[t] += 1;
    }
    let emp: Vec<f64> = hist.iter().map(|&h| h as f64 / trials as f64).collect();

    let mut per_length = Vec::new();
    let mut exact_mean = 0.0;
    for (i, k) in (k_min..=k_max).enumerate() {
        let (mean, stderr) = mean_stderr(censuses.iter().map(|c| c[i] as f64));
        let exact = expected_light_count_exact(n, k, c0, orientation)?;
        exact_mean += exact;
        per_length.push(PerLength {
            k,
            mean,
            stderr,
            exact,
        });
    }
    let (mean_count, mean_se) = mean_stderr(totals.iter().map(|&t| t as f64));
    let pois = poisson_pmf(exact_mean, emp.len());
    let rows = emp
        .iter()
        .zip(&pois)
        .enumerate()
        .map(|(count, (&e, &p))| PoissonRow {
            count,
            empirical_prob: e,
            poisson_prob: p,
        })
        .collect();
    Ok(PoissonReport {
        meta: Meta::new(n, trials, base_seed),
        orientation,
        c0,
        k_max,
        rows,
        mean_count,
        mean_stderr: mean_se,
        exact_mean,
        per_length,
        tv_distance: tv_to_poisson(&emp, exact_mean),
    })
}

impl Tabular for PoissonReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new("poisson", &["count", "empirical_prob", "poisson_prob"]);
        for r in &self.rows {
            t.push(vec![
                Cell::from(r.count),
                r.empirical_prob.into(),
                r.poisson_prob.into(),
            ]);
        }
        let mut k = Table::new("lengths", &["k", "mean", "stderr", "exact"]);
        for r in &self.per_length {
            k.push(vec![
                Cell::from(r.k),
                r.mean.into(),
                r.stderr.into(),
                r.exact.into(),
            ]);
        }
        vec![t, k]
    }
}
