use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::emit::{Cell, Meta, Table, Tabular};
use super::stats::binomial_stderr;
use crate::analytic::{brownian_band_probability, uniform_light_probability_estimate};
use crate::error::{Error, Result};
use crate::instances::windows_within_slack;
use crate::par;
use crate::rng::trial_rng;

const CHUNK: usize = 1024;
const BAND_TERMS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkBandReport {
    pub meta: Meta,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "A")]
    pub a: f64,
    /// Fraction of synthetic cycles that are `A`-uniformly light.
    pub p_hat: f64,
    pub stderr: f64,
    /// Fraction of free walks of `Exp(1) - 1` steps staying within `A/2`
    /// of the origin for all `L` steps.
    pub p_band: f64,
    pub band_stderr: f64,
    pub exp_estimate: f64,
    /// Brownian probability of staying within `A/2` up to time `L`.
    pub brownian: f64,
}

/// Uniform lightness of `L` i.i.d. `Exp(1)` weights scaled to be exactly
/// light (`c = n W / L`; `n` cancels, so the unit is `W / L`).
pub fn walk_band_experiment(
    l: usize,
    a: f64,
    trials: usize,
    base_seed: u64,
    workers: usize,
) -> Result<WalkBandReport> {
    if l < 2 || !(a > 0.0) || trials == 0 {
        return Err(Error::invalid(format!(
            "need L >= 2, A > 0, trials >= 1; got L={l}, A={a}, trials={trials}"
        )));
    }
    let hits = count_hits(trials, workers, |t| {
        let mut rng = trial_rng(base_seed, t as u64);
        let w: Vec<f64> = (0..l).map(|_| rng.sample(Exp1)).collect();
        let unit = w.iter().sum::<f64>() / l as f64;
        windows_within_slack(&w, a, unit)
    });
    // Independent stream for the free walk.
    let band_seed = base_seed ^ 0x6a09_e667_f3bc_c909;
    let band_hits = count_hits(trials, workers, |t| stays_in_band(band_seed, t, l, a / 2.0));
    let p_hat = hits as f64 / trials as f64;
    let p_band = band_hits as f64 / trials as f64;
    Ok(WalkBandReport {
        meta: Meta::new(0, trials, base_seed),
        l,
        a,
        p_hat,
        stderr: binomial_stderr(p_hat, trials),
        p_band,
        band_stderr: binomial_stderr(p_band, trials),
        exp_estimate: uniform_light_probability_estimate(l as f64, a)?,
        brownian: brownian_band_probability(l as f64, a / 2.0, BAND_TERMS)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandWalkReport {
    pub meta: Meta,
    pub steps: usize,
    pub half_width: f64,
    pub p_hat: f64,
    pub stderr: f64,
    pub brownian: f64,
}

/// Probability that a walk of `steps` centred `Exp(1)` increments keeps
/// `|S_j| < half_width` throughout, against Brownian motion at time
/// `steps` (unit variance per step).
pub fn band_walk_experiment(
    steps: usize,
    half_width: f64,
    trials: usize,
    base_seed: u64,
    workers: usize,
) -> Result<BandWalkReport> {
    if steps == 0 || !(half_width > 0.0) || trials == 0 {
        return Err(Error::invalid(
            "need steps >= 1, half_width > 0, trials >= 1",
        ));
    }
    let hits = count_hits(trials, workers, |t| {
        stays_in_band(base_seed, t, steps, half_width)
    });
    let p_hat = hits as f64 / trials as f64;
    Ok(BandWalkReport {
        meta: Meta::new(0, trials, base_seed),
        steps,
        half_width,
        p_hat,
        stderr: binomial_stderr(p_hat, trials),
        brownian: brownian_band_probability(steps as f64, half_width, BAND_TERMS)?,
    })
}

fn stays_in_band(seed: u64, t: usize, steps: usize, half_width: f64) -> bool {
    let mut rng = trial_rng(seed, t as u64);
    let mut s = 0.0f64;
    for _ in 0..steps {
        let x: f64 = rng.sample(Exp1);
        s += x - 1.0;
        if s.abs() >= half_width {
            return false;
        }
    }
    true
}

/// Number of `t < trials` with `hit(t)`, summed per chunk in integers.
fn count_hits(trials: usize, workers: usize, hit: impl Fn(usize) -> bool + Sync + Send) -> usize {
    par::map_chunks(trials, CHUNK, workers, |r| r.filter(|&t| hit(t)).count())
        .into_iter()
        .sum()
}

impl Tabular for WalkBandReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "walkband",
            &["L", "A", "p_hat", "stderr", "exp_estimate", "brownian"],
        );
        t.push(vec![
            Cell::from(self.l),
            self.a.into(),
            self.p_hat.into(),
            self.stderr.into(),
            self.exp_estimate.into(),
            self.brownian.into(),
        ]);
        vec![t]
    }
}

impl Tabular for BandWalkReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "bandwalk",
            &["steps", "half_width", "p_hat", "stderr", "brownian"],
        );
        t.push(vec![
            Cell::from(self.steps),
            self.half_width.into(),
            self.p_hat.into(),
            self.stderr.into(),
            self.brownian.into(),
        ]);
        vec![t]
    }
}
