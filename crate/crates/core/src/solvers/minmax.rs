use std::collections::VecDeque;

use super::unionfind::UnionFind;
use super::{SolveResult, SolverKind};
use crate::error::Result;
use crate::instances::{Cycle, GraphInstance, Orientation};

/// The cycle minimising its heaviest edge: the first cycle closed when edges
/// are inserted in increasing weight order. `min_mean` holds that weight.
///
/// Only edges below a threshold are sorted; the threshold starts at `2/n`
/// and doubles until a cycle closes, which keeps the work near `O(n^2)`.
pub fn min_max_cycle(g: &GraphInstance) -> Result<SolveResult> {
    let n = g.n();
    let mut t = 2.0 / n as f64;
    loop {
        let mut edges: Vec<(f64, usize, usize)> = g
            .edges()
            .filter(|&(_, _, w)| w <= t)
            .map(|(i, j, w)| (w, i, j))
            .collect();
        edges.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let found = match g.orientation() {
            Orientation::Undirected => first_undirected(n, &edges),
            Orientation::Directed => first_directed(n, &edges),
        };
        if let Some((vs, max)) = found {
            let witness = Cycle::in_graph(g, vs)?;
            debug_assert_eq!(witness.max_weight(), max);
            return Ok(SolveResult {
                min_mean: max,
                witness,
                solver: SolverKind::ThresholdProcess,
                certified_exact: true,
                n,
                orientation: g.orientation(),
                seed: g.seed(),
            });
        }
        if t.is_infinite() {
            unreachable!("complete graph has a cycle");
        }
        t = if edges.len() == g.edge_count() {
            f64::INFINITY
        } else {
            2.0 * t
        };
    }
}

fn first_undirected(n: usize, edges: &[(f64, usize, usize)]) -> Option<(Vec<usize>, f64)> {
    let mut uf = UnionFind::new(n);
    let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(w, a, b) in edges {
        if uf.union(a, b) {
            forest[a].push(b);
            forest[b].push(a);
        } else {
            // Tree path a..b plus the closing edge b-a.
            return Some((bfs_path(&forest, a, b), w));
        }
    }
    None
}

fn first_directed(n: usize, edges: &[(f64, usize, usize)]) -> Option<(Vec<usize>, f64)> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(w, a, b) in edges {
        out[a].push(b);
        if a == b {
            continue;
        }
        // Does the new arc's head reach its tail?
        let path = bfs_path(&out, b, a);
        if !path.is_empty() {
            let mut vs = vec![a];
            vs.extend_from_slice(&path[..path.len() - 1]);
            return Some((vs, w));
        }
    }
    None
}

/// Vertices of a shortest path `from .. to`, or empty if unreachable.
fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return path;
        }
        for &u in &adj[v] {
            if prev[u] == usize::MAX {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    Vec::new()
}
