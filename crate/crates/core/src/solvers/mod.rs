//! Exact minimum mean-weight cycle solvers, the min max-weight threshold
//! process, and light-cycle counting.
//!
//! Undirected instances are handled by running Karp or Howard on the
//! non-backtracking arc graph (see [`digraph`]). That value is a lower
//! bound on the best simple cycle, and it is attained whenever the
//! extracted closed walk is a simple cycle, which is the common case. If it
//! is not, the exact answer is recovered with [`light_search`] started at
//! the lower bound.

mod brute;
mod census;
mod digraph;
mod howard;
mod karp;
mod light;
mod minmax;
mod pruned;
mod unionfind;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instances::{Cycle, GraphInstance, Orientation};

pub use brute::{brute_force_min_mean, enumerate_cycles, BRUTE_FORCE_MAX_N};
pub use census::{count_light_cycles, LightCycleCensus};
pub use howard::howard_min_mean_cycle;
pub use karp::karp_min_mean_cycle;
pub use light::{light_search, light_search_with, LightSearchOptions};
pub use minmax::min_max_cycle;
pub use pruned::{pruned_solve, pruned_solve_with_stats, PruneStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Karp,
    Howard,
    BruteForce,
    PrunedKarp,
    /// Best-first depth-first search over prefix-light paths.
    LightSearch,
    /// Ascending edge insertion until the first cycle closes.
    ThresholdProcess,
}

impl SolverKind {
    pub const MEAN_SOLVERS: [SolverKind; 5] = [
        SolverKind::Karp,
        SolverKind::Howard,
        SolverKind::BruteForce,
        SolverKind::PrunedKarp,
        SolverKind::LightSearch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Karp => "karp",
            SolverKind::Howard => "howard",
            SolverKind::BruteForce => "brute_force",
            SolverKind::PrunedKarp => "pruned_karp",
            SolverKind::LightSearch => "light_search",
            SolverKind::ThresholdProcess => "threshold_process",
        }
    }

    /// Run this solver on `g`.
    pub fn solve(self, g: &GraphInstance) -> Result<SolveResult> {
        match self {
            SolverKind::Karp => karp_min_mean_cycle(g),
            SolverKind::Howard => howard_min_mean_cycle(g),
            SolverKind::BruteForce => brute_force_min_mean(g),
            SolverKind::PrunedKarp => pruned_solve(g),
            SolverKind::LightSearch => light_search(g),
            SolverKind::ThresholdProcess => min_max_cycle(g),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "karp" => SolverKind::Karp,
            "howard" => SolverKind::Howard,
            "brute_force" | "brute" => SolverKind::BruteForce,
            "pruned_karp" | "pruned" => SolverKind::PrunedKarp,
            "light_search" | "light" => SolverKind::LightSearch,
            "threshold_process" | "minmax" | "min_max" => SolverKind::ThresholdProcess,
            other => return Err(Error::Parse(format!("unknown solver '{other}'"))),
        };
        Ok(kind)
    }
}

/// Output of every solver. For [`min_max_cycle`] the `min_mean` field holds
/// the minimum possible maximum edge weight instead.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub min_mean: f64,
    pub witness: Cycle,
    pub solver: SolverKind,
    pub certified_exact: bool,
    pub n: usize,
    pub orientation: Orientation,
    pub seed: u64,
}

#[derive(Serialize)]
struct SolveRecord<'a> {
    min_mean: f64,
    length: usize,
    vertices: &'a [usize],
    solver: SolverKind,
    certified_exact: bool,
    seed: u64,
    n: usize,
    orientation: Orientation,
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolveRecord {
            min_mean: self.min_mean,
            length: self.witness.len(),
            vertices: self.witness.vertices(),
            solver: self.solver,
            certified_exact: self.certified_exact,
            seed: self.seed,
            n: self.n,
            orientation: self.orientation,
        }
        .serialize(s)
    }
}

impl SolveResult {
    pub(crate) fn new(g: &GraphInstance, witness: Cycle, solver: SolverKind, exact: bool) -> Self {
        SolveResult {
            min_mean: witness.mean_weight(),
            witness,
            solver,
            certified_exact: exact,
            n: g.n(),
            orientation: g.orientation(),
            seed: g.seed(),
        }
    }

    /// `n` times the optimum, the scale on which the limit laws live.
    pub fn scaled(&self) -> f64 {
        self.n as f64 * self.min_mean
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// The best 2-cycle (directed) or a good triangle, found in `O(n^2)`.
///
/// Triangles are searched through the `fanout` lightest out-edges of each
/// vertex and of each such neighbour.
pub fn cheap_upper_bound(g: &GraphInstance, fanout: usize) -> Cycle {
    let n = g.n();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut offer = |mean: f64, vs: &[usize]| {
        if best.as_ref().is_none_or(|(m, _)| mean < *m) {
            best = Some((mean, vs.to_vec()));
        }
    };
    if g.orientation() == Orientation::Directed {
        for i in 0..n {
            for j in i + 1..n {
                offer((g.weight(i, j) + g.weight(j, i)) / 2.0, &[i, j]);
            }
        }
    }
    let light = lightest_neighbours(g, fanout);
    for u in 0..n {
        for &v in &light[u] {
            for &x in &light[v] {
                if x != u {
                    let w = g.weight(u, v) + g.weight(v, x) + g.weight(x, u);
                    offer(w / 3.0, &[u, v, x]);
                }
            }
        }
    }
    let (_, vs) = best.expect("complete graph has a cycle");
    Cycle::in_graph(g, vs).expect("scan cycles are simple")
}

fn lightest_neighbours(g: &GraphInstance, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let k = k.clamp(1, n - 1);
    (0..n)
        .map(|u| {
            let row = g.row(u);
            let mut idx: Vec<usize> = (0..n).filter(|&v| v != u).collect();
            if k < idx.len() {
                idx.select_nth_unstable_by(k - 1, |&a, &b| row[a].total_cmp(&row[b]));
                idx.truncate(k);
            }
            idx.sort_by(|&a, &b| row[a].total_cmp(&row[b]));
            idx
        })
        .collect()
}

/// Turn a solver's optimal closed walk into a certified simple cycle.
///
/// Directed walks extracted from Karp/Howard are always simple. An
/// undirected non-backtracking walk may repeat a vertex; its mean is then
/// only a lower bound and the exact cycle comes from the light search.
pub(crate) fn finish_walk(
    g: &GraphInstance,
    walk: Vec<usize>,
    lower_bound: f64,
    solver: SolverKind,
) -> Result<SolveResult> {
    match Cycle::in_graph(g, walk) {
        Ok(c) => Ok(SolveResult::new(g, c, solver, true)),
        Err(_) if g.orientation() == Orientation::Undirected => {
            let opts = LightSearchOptions {
                floor: lower_bound,
                ..LightSearchOptions::default()
            };
            let r = light_search_with(g, &opts)?;
            Ok(SolveResult { solver, ..r })
        }
        Err(e) => Err(Error::Numerical(format!(
            "{solver} produced a non-simple walk: {e}"
        ))),
    }
}
