use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instances::{GraphInstance, Orientation};

/// Number of `c`-light cycles (mean weight at most `c/n`) per length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LightCycleCensus {
    pub counts: BTreeMap<usize, u64>,
    pub c: f64,
    pub k_max: usize,
}

impl LightCycleCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }
}

/// Count `c`-light cycles of length up to `k_max` by canonical DFS: each
/// cycle is rooted at its smallest vertex, and undirected cycles are taken
/// in the direction whose second vertex is smaller. Partial paths heavier
/// than `c*k_max/n` are abandoned.
///
/// The expected work is about `n` times the expected number of light paths
/// from one vertex, which grows like `(c*e)^k`; above `c = 1/e` it becomes
/// exponential in `k_max`.
pub fn count_light_cycles(g: &GraphInstance, c: f64, k_max: usize) -> Result<LightCycleCensus> {
    let min_len = g.orientation().min_cycle_len();
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::invalid(format!(
            "c must be finite and >= 0, got {c}"
        )));
    }
    if k_max < min_len {
        return Err(Error::invalid(format!(
            "k_max must be at least {min_len} for {} graphs",
            g.orientation()
        )));
    }
    let n = g.n();
    let unit = c / n as f64;
    let budget = unit * k_max as f64;
    let mut counts = vec![0u64; k_max + 1];

    let mut adj: Vec<Vec<(f64, usize)>> = (0..n)
        .map(|v| {
            g.row(v)
                .iter()
                .enumerate()
                .filter(|&(u, &w)| u != v && w <= budget)
                .map(|(u, &w)| (w, u))
                .collect()
        })
        .collect();
    for list in &mut adj {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    let mut walker = Walker {
        adj: &adj,
        undirected: g.orientation() == Orientation::Undirected,
        min_len,
        k_max,
        unit,
        budget,
        counts: &mut counts,
        path: Vec::with_capacity(k_max),
        on_path: vec![false; n],
    };
    for s in 0..n {
        walker.path.push(s);
        walker.on_path[s] = true;
        walker.grow(s, 0.0);
        walker.on_path[s] = false;
        walker.path.pop();
    }

    Ok(LightCycleCensus {
        counts: (min_len..=k_max).map(|k| (k, counts[k])).collect(),
        c,
        k_max,
    })
}

struct Walker<'a> {
    adj: &'a [Vec<(f64, usize)>],
    undirected: bool,
    min_len: usize,
    k_max: usize,
    unit: f64,
    budget: f64,
    counts: &'a mut [u64],
    path: Vec<usize>,
    on_path: Vec<bool>,
}

impl Walker<'_> {
    fn grow(&mut self, v: usize, weight: f64) {
        let s = self.path[0];
        let k = self.path.len();
        let adj = self.adj;
        for &(w, x) in &adj[v] {
            let total = weight + w;
            if total > self.budget {
                break;
            }
            if x == s {
                if k >= self.min_len
                    && total <= k as f64 * self.unit
                    && (!self.undirected || self.path[1] < self.path[k - 1])
                {
                    self.counts[k] += 1;
                }
            } else if x > s && k < self.k_max && !self.on_path[x] {
                self.on_path[x] = true;
                self.path.push(x);
                self.grow(x, total);
                self.path.pop();
                self.on_path[x] = false;
            }
        }
    }
}
