//! Exact minimum mean cycle by depth-first search over prefix-light paths.
//!
//! Any cycle of mean at most `b` has a rotation whose partial sums satisfy
//! `S_j <= j*b` for every prefix (take the rotation starting right after
//! the maximum of `S_j - j*b`). So searching, from every start vertex, the
//! paths whose prefixes all stay under `j*b` finds every such cycle. With
//! adjacency lists sorted by weight the scan of a vertex stops at the first
//! edge that breaks the budget, and the budget drops to the best mean found
//! so far.
//!
//! Budgets are tried on an increasing ladder of scaled values `n*b`, ending
//! at a cheap upper bound. The first level that yields a cycle yields the
//! optimum. For random instances near the threshold `n*b ~ 1/e` the search
//! tree is small, so the expected cost is roughly linear in `n` once the
//! instance has been scanned.

use super::{cheap_upper_bound, SolveResult, SolverKind};
use crate::error::{Error, Result};
use crate::instances::{Cycle, GraphInstance};

/// Paths deeper than this use the unsorted row for edges above the cap.
const SORTED_DEPTH: f64 = 64.0;

#[derive(Debug, Clone)]
pub struct LightSearchOptions {
    /// Known lower bound on the optimum mean. Levels below it are skipped.
    pub floor: f64,
    /// Scaled budgets `n*b` tried in increasing order.
    pub levels: Vec<f64>,
    /// Lightest neighbours used by the triangle scan for the upper bound.
    pub fanout: usize,
    /// Abort with an error after this many path extensions.
    pub max_expansions: u64,
}

impl Default for LightSearchOptions {
    fn default() -> Self {
        LightSearchOptions {
            floor: 0.0,
            levels: vec![
                0.2, 0.3, 0.35, 0.37, 0.385, 0.4, 0.415, 0.43, 0.45, 0.48, 0.52, 0.6, 0.75, 1.0,
                1.5, 2.5, 4.0, 8.0, 16.0, 32.0,
            ],
            fanout: 6,
            max_expansions: u64::MAX,
        }
    }
}

pub fn light_search(g: &GraphInstance) -> Result<SolveResult> {
    light_search_with(g, &LightSearchOptions::default())
}

pub fn light_search_with(g: &GraphInstance, opts: &LightSearchOptions) -> Result<SolveResult> {
    let n = g.n() as f64;
    let upper = cheap_upper_bound(g, opts.fanout);
    let ub = upper.mean_weight();
    let adj = Adjacency::build(g, SORTED_DEPTH * ub);
    let mut search = Dfs::new(g, &adj, opts.max_expansions);

    let mut budgets: Vec<f64> = Vec::new();
    if opts.floor > 0.0 && opts.floor < ub {
        budgets.push(opts.floor * (1.0 + 1e-9));
    }
    budgets.extend(
        opts.levels
            .iter()
            .map(|c| c / n)
            .filter(|&b| b > opts.floor && b < ub),
    );
    budgets.sort_by(f64::total_cmp);
    budgets.dedup();

    for b in budgets {
        if let Some(vs) = search.run(b, None)? {
            let c = Cycle::in_graph(g, vs)?;
            return Ok(SolveResult::new(g, c, SolverKind::LightSearch, true));
        }
    }
    let vs = search
        .run(ub, Some(upper.vertices().to_vec()))?
        .expect("seeded with the upper-bound cycle");
    let c = Cycle::in_graph(g, vs)?;
    Ok(SolveResult::new(g, c, SolverKind::LightSearch, true))
}

/// Out-edges of weight `<= cap`, each list sorted by weight.
struct Adjacency {
    start: Vec<usize>,
    to: Vec<u32>,
    w: Vec<f64>,
    cap: f64,
}

impl Adjacency {
    fn build(g: &GraphInstance, cap: f64) -> Self {
        let n = g.n();
        let mut start = Vec::with_capacity(n + 1);
        let mut to = Vec::new();
        let mut w = Vec::new();
        let mut buf: Vec<(f64, u32)> = Vec::new();
        start.push(0);
        for v in 0..n {
            buf.clear();
            buf.extend(
                g.row(v)
                    .iter()
                    .enumerate()
                    .filter(|&(u, &x)| u != v && x <= cap)
                    .map(|(u, &x)| (x, u as u32)),
            );
            buf.sort_by(|a, b| a.0.total_cmp(&b.0));
            for &(x, u) in &buf {
                w.push(x);
                to.push(u);
            }
            start.push(to.len());
        }
        Adjacency { start, to, w, cap }
    }
}

struct Dfs<'a> {
    g: &'a GraphInstance,
    adj: &'a Adjacency,
    min_len: usize,
    budget: f64,
    best: Option<(f64, Vec<usize>)>,
    path: Vec<usize>,
    on_path: Vec<bool>,
    start: usize,
    expansions: u64,
    max_expansions: u64,
}

impl<'a> Dfs<'a> {
    fn new(g: &'a GraphInstance, adj: &'a Adjacency, max_expansions: u64) -> Self {
        Dfs {
            g,
            adj,
            min_len: g.orientation().min_cycle_len(),
            budget: 0.0,
            best: None,
            path: Vec::new(),
            on_path: vec![false; g.n()],
            start: 0,
            expansions: 0,
            max_expansions,
        }
    }

    /// Best cycle of mean `<= budget` (strictly better than `seed` if
    /// given, which is returned when nothing beats it).
    fn run(&mut self, budget: f64, seed: Option<Vec<usize>>) -> Result<Option<Vec<usize>>> {
        self.budget = budget;
        self.best = seed.map(|vs| (budget, vs));
        for s in 0..self.g.n() {
            self.start = s;
            self.path.push(s);
            self.on_path[s] = true;
            let r = self.grow(s, 0.0);
            self.on_path[s] = false;
            self.path.pop();
            r?;
        }
        Ok(self.best.take().map(|(_, vs)| vs))
    }

    fn grow(&mut self, v: usize, weight: f64) -> Result<()> {
        self.expansions += 1;
        if self.expansions > self.max_expansions {
            return Err(Error::Numerical(format!(
                "light search exceeded {} expansions",
                self.max_expansions
            )));
        }
        let e = self.path.len() as f64;
        let adj = self.adj;
        for idx in adj.start[v]..adj.start[v + 1] {
            let w = adj.w[idx];
            if weight + w > e * self.budget {
                return Ok(());
            }
            self.visit(adj.to[idx] as usize, weight, w)?;
        }
        // Deep paths may afford edges above the sorted cap.
        if e * self.budget - weight > adj.cap {
            let row = self.g.row(v);
            for (x, &w) in row.iter().enumerate() {
                if x != v && w > adj.cap && weight + w <= e * self.budget {
                    self.visit(x, weight, w)?;
                }
            }
        }
        Ok(())
    }

    fn visit(&mut self, x: usize, weight: f64, w: f64) -> Result<()> {
        let total = weight + w;
        if x == self.start {
            let k = self.path.len();
            if k >= self.min_len {
                let mean = total / k as f64;
                if self.best.as_ref().is_none_or(|(b, _)| mean < *b) {
                    self.best = Some((mean, self.path.clone()));
                    self.budget = mean;
                }
            }
        } else if !self.on_path[x] {
            self.on_path[x] = true;
            self.path.push(x);
            let r = self.grow(x, total);
            self.path.pop();
            self.on_path[x] = false;
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{sample_complete, Orientation};
    use crate::solvers::brute_force_min_mean;

    #[test]
    fn matches_brute_force_on_small_instances() {
        for o in [Orientation::Directed, Orientation::Undirected] {
            for seed in 0..200 {
                let n = 3 + (seed as usize % 6);
                let g = sample_complete(n, o, seed).unwrap();
                let a = light_search(&g).unwrap();
                let b = brute_force_min_mean(&g).unwrap();
                assert!(
                    (a.min_mean - b.min_mean).abs() <= 1e-12 * b.min_mean,
                    "{o} seed {seed}: {} vs {}",
                    a.min_mean,
                    b.min_mean
                );
            }
        }
    }

    #[test]
    fn floor_above_optimum_still_finds_upper_level() {
        let g = sample_complete(7, Orientation::Undirected, 5).unwrap();
        let exact = brute_force_min_mean(&g).unwrap().min_mean;
        let opts = LightSearchOptions {
            floor: exact * 0.5,
            ..Default::default()
        };
        let r = light_search_with(&g, &opts).unwrap();
        assert!((r.min_mean - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn expansion_cap_is_reported() {
        let g = sample_complete(40, Orientation::Directed, 1).unwrap();
        let opts = LightSearchOptions {
            max_expansions: 3,
            ..Default::default()
        };
        assert!(matches!(
            light_search_with(&g, &opts),
            Err(Error::Numerical(_))
        ));
    }
}
