use serde::Serialize;

use super::digraph::Lifted;
use super::karp::{karp, karp_min_mean_cycle};
use super::{cheap_upper_bound, finish_walk, SolveResult, SolverKind};
use crate::error::Result;
use crate::instances::GraphInstance;

const FANOUT: usize = 6;

/// What the pruning step did.
#[derive(Debug, Clone, Serialize)]
pub struct PruneStats {
    /// Mean of the cheap cycle, an upper bound on the optimum.
    pub upper_bound: f64,
    /// Edges heavier than this were removed (`n` times the upper bound).
    pub threshold: f64,
    /// Fraction of edges of weight `<= threshold`.
    pub surviving_fraction: f64,
    /// Whether unpruned Karp had to be run.
    pub fell_back: bool,
}

/// Karp on the subgraph of edges no heavier than `n` times a cheap upper
/// bound. A cycle of mean `m <= ub` and length `k <= n` has every edge at
/// most `k*m <= n*ub`, so the optimum survives the pruning.
pub fn pruned_solve(g: &GraphInstance) -> Result<SolveResult> {
    pruned_solve_with_stats(g).map(|(r, _)| r)
}

pub fn pruned_solve_with_stats(g: &GraphInstance) -> Result<(SolveResult, PruneStats)> {
    let n = g.n() as f64;
    let upper_bound = cheap_upper_bound(g, FANOUT).mean_weight();
    let threshold = n * upper_bound;
    let surviving = g.edges().filter(|&(_, _, w)| w <= threshold).count();
    let mut stats = PruneStats {
        upper_bound,
        threshold,
        surviving_fraction: surviving as f64 / g.edge_count() as f64,
        fell_back: false,
    };
    if threshold.is_finite() {
        let lifted = Lifted::build(g, threshold);
        if let Some((mu, nodes)) = karp(&lifted.graph) {
            if threshold >= n * mu {
                let r = finish_walk(g, lifted.walk(&nodes), mu, SolverKind::PrunedKarp)?;
                return Ok((r, stats));
            }
        }
    }
    stats.fell_back = true;
    let r = karp_min_mean_cycle(g)?;
    Ok((
        SolveResult {
            solver: SolverKind::PrunedKarp,
            ..r
        },
        stats,
    ))
}
