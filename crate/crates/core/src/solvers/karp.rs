use super::digraph::{Digraph, Lifted};
use super::{finish_walk, SolveResult, SolverKind};
use crate::error::Result;
use crate::instances::GraphInstance;

const NONE: u32 = u32::MAX;

/// Karp's dynamic program over the full complete graph.
pub fn karp_min_mean_cycle(g: &GraphInstance) -> Result<SolveResult> {
    let lifted = Lifted::build(g, f64::INFINITY);
    let (mu, nodes) = karp(&lifted.graph).expect("complete graph has a cycle");
    finish_walk(g, lifted.walk(&nodes), mu, SolverKind::Karp)
}

/// Minimum cycle mean of `d` and one optimal node cycle, or `None` if `d`
/// is acyclic. Ties pick the smallest node, then the smallest `k`.
pub(crate) fn karp(d: &Digraph) -> Option<(f64, Vec<usize>)> {
    let m = d.nodes();
    if m == 0 {
        return None;
    }
    let mut dist = vec![f64::INFINITY; (m + 1) * m];
    let mut pred = vec![NONE; (m + 1) * m];
    dist[..m].fill(0.0);
    for k in 1..=m {
        let (prev, cur) = dist.split_at_mut(k * m);
        let prev = &prev[(k - 1) * m..];
        let cur = &mut cur[..m];
        let pk = &mut pred[k * m..(k + 1) * m];
        for v in 0..m {
            let (from, w) = d.in_arcs(v);
            let mut best = f64::INFINITY;
            let mut arg = NONE;
            for (&u, &wu) in from.iter().zip(w) {
                let cand = prev[u as usize] + wu;
                if cand < best {
                    best = cand;
                    arg = u;
                }
            }
            cur[v] = best;
            pk[v] = arg;
        }
    }

    let last = &dist[m * m..];
    let mut best: Option<(f64, usize)> = None;
    for v in 0..m {
        if last[v] == f64::INFINITY {
            continue;
        }
        let mut worst = f64::NEG_INFINITY;
        for k in 0..m {
            let dk = dist[k * m + v];
            if dk == f64::INFINITY {
                continue;
            }
            let r = (last[v] - dk) / (m - k) as f64;
            if r > worst {
                worst = r;
            }
        }
        if best.is_none_or(|(b, _)| worst < b) {
            best = Some((worst, v));
        }
    }
    let (mu, v) = best?;

    // Walk back from D_m(v); the first repeated node closes a cycle, and
    // every cycle on this walk is optimal.
    let mut seen_at = vec![usize::MAX; m];
    let mut walk = Vec::with_capacity(m + 1);
    let mut x = v;
    for k in (0..=m).rev() {
        if seen_at[x] != usize::MAX {
            let j = seen_at[x];
            // Positions in `walk` run backwards in time; reverse the slice
            // between the two visits to get forward order.
            let mut cyc: Vec<usize> = walk[j + 1..].to_vec();
            cyc.reverse();
            cyc.insert(0, x);
            return Some((mu, cyc));
        }
        seen_at[x] = walk.len();
        walk.push(x);
        if k == 0 {
            break;
        }
        x = pred[k * m + x] as usize;
    }
    unreachable!("a walk of m edges on m nodes repeats a node")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_weight(d: &Digraph, c: &[usize]) -> f64 {
        (0..c.len())
            .map(|i| d.arc_weight(c[i], c[(i + 1) % c.len()]).unwrap())
            .sum()
    }

    #[test]
    fn two_node_cycle() {
        let d = Digraph::from_arcs(2, &[(0, 1, 1.0), (1, 0, 3.0)]);
        let (mu, c) = karp(&d).unwrap();
        assert_eq!(mu, 2.0);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn acyclic_is_none() {
        let d = Digraph::from_arcs(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        assert!(karp(&d).is_none());
    }

    #[test]
    fn picks_lighter_of_two_cycles_and_witness_matches() {
        // 0->1->2->0 has mean 2; 3->4->3 has mean 1.5; joined by a bridge.
        let arcs = [
            (0, 1, 1.0),
            (1, 2, 2.0),
            (2, 0, 3.0),
            (2, 3, 0.1),
            (3, 4, 1.0),
            (4, 3, 2.0),
        ];
        let d = Digraph::from_arcs(5, &arcs);
        let (mu, c) = karp(&d).unwrap();
        assert!((mu - 1.5).abs() < 1e-15);
        assert!((cycle_weight(&d, &c) / c.len() as f64 - mu).abs() < 1e-12);
        let mut s = c.clone();
        s.sort();
        assert_eq!(s, vec![3, 4]);
    }

    #[test]
    fn witness_order_follows_arcs() {
        let arcs = [
            (0, 2, 1.0),
            (2, 1, 1.0),
            (1, 0, 1.0),
            (0, 1, 9.0),
            (1, 2, 9.0),
            (2, 0, 9.0),
        ];
        let d = Digraph::from_arcs(3, &arcs);
        let (mu, c) = karp(&d).unwrap();
        assert_eq!(mu, 1.0);
        assert_eq!(cycle_weight(&d, &c), 3.0);
    }
}
