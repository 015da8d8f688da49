use super::digraph::{Digraph, Lifted};
use super::{finish_walk, SolveResult, SolverKind};
use crate::error::{Error, Result};
use crate::instances::GraphInstance;

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100_000;
const SWEEP_ITERATIONS: usize = 64;

/// Howard's policy iteration over the full complete graph.
pub fn howard_min_mean_cycle(g: &GraphInstance) -> Result<SolveResult> {
    let lifted = Lifted::build(g, f64::INFINITY);
    let (mu, nodes) = howard(&lifted.graph)?;
    finish_walk(g, lifted.walk(&nodes), mu, SolverKind::Howard)
}

struct Policy {
    next: Vec<usize>,
    weight: Vec<f64>,
    eta: Vec<f64>,
    x: Vec<f64>,
}

impl Policy {
    fn initial(d: &Digraph) -> Result<Self> {
        let m = d.nodes();
        let mut next = Vec::with_capacity(m);
        let mut weight = Vec::with_capacity(m);
        for v in 0..m {
            let (u, w) = d
                .out_arcs(v)
                .reduce(|a, b| if b.1 < a.1 { b } else { a })
                .ok_or_else(|| Error::invalid(format!("node {v} has no out-arc")))?;
            next.push(u);
            weight.push(w);
        }
        Ok(Policy {
            next,
            weight,
            eta: vec![0.0; m],
            x: vec![0.0; m],
        })
    }

    /// Gain `eta` and bias `x` of the current policy graph.
    fn evaluate(&mut self) {
        let m = self.next.len();
        let mut walk_id = vec![0usize; m];
        let mut done = vec![false; m];
        let mut path = Vec::new();
        for s in 0..m {
            if walk_id[s] != 0 {
                continue;
            }
            path.clear();
            let mut v = s;
            while walk_id[v] == 0 {
                walk_id[v] = s + 1;
                path.push(v);
                v = self.next[v];
            }
            if walk_id[v] == s + 1 && !done[v] {
                let pos = path.iter().position(|&y| y == v).expect("on path");
                let cyc = &path[pos..];
                let len = cyc.len();
                let mean = cyc.iter().map(|&c| self.weight[c]).sum::<f64>() / len as f64;
                // Anchor at the smallest node so a retained cycle keeps its
                // bias values between iterations.
                let a = (0..len).min_by_key(|&i| cyc[i]).unwrap();
                let order: Vec<usize> = (0..len).map(|i| cyc[(a + i) % len]).collect();
                self.x[order[0]] = 0.0;
                self.eta[order[0]] = mean;
                done[order[0]] = true;
                for i in (1..len).rev() {
                    let c = order[i];
                    let succ = order[(i + 1) % len];
                    self.x[c] = self.weight[c] - mean + self.x[succ];
                    self.eta[c] = mean;
                    done[c] = true;
                }
                path.truncate(pos);
            }
            for &y in path.iter().rev() {
                let u = self.next[y];
                self.eta[y] = self.eta[u];
                self.x[y] = self.weight[y] - self.eta[y] + self.x[u];
                done[y] = true;
            }
        }
    }

    /// One improvement step; returns whether the policy changed.
    fn improve(&mut self, d: &Digraph, tol: f64) -> bool {
        let m = self.next.len();
        let mut changed = false;
        for v in 0..m {
            let mut best = self.eta[v] - tol;
            let mut arg = None;
            for (u, w) in d.out_arcs(v) {
                if self.eta[u] < best {
                    best = self.eta[u];
                    arg = Some((u, w));
                }
            }
            if let Some((u, w)) = arg {
                self.next[v] = u;
                self.weight[v] = w;
                changed = true;
            }
        }
        if changed {
            return true;
        }
        for v in 0..m {
            let ev = self.eta[v];
            let mut best = self.x[v] - tol;
            let mut arg = None;
            for (u, w) in d.out_arcs(v) {
                if (self.eta[u] - ev).abs() > tol {
                    continue;
                }
                let val = w - ev + self.x[u];
                if val < best {
                    best = val;
                    arg = Some((u, w));
                }
            }
            if let Some((u, w)) = arg {
                if u != self.next[v] {
                    self.next[v] = u;
                    self.weight[v] = w;
                    changed = true;
                }
            }
        }
        changed
    }

    /// The policy cycle reached from the node of smallest gain.
    fn best_cycle(&self) -> (f64, Vec<usize>) {
        let m = self.next.len();
        let start = (0..m)
            .min_by(|&a, &b| self.eta[a].total_cmp(&self.eta[b]).then(a.cmp(&b)))
            .expect("non-empty");
        let mut seen = vec![false; m];
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = self.next[v];
        }
        let mut cyc = vec![v];
        let mut u = self.next[v];
        while u != v {
            cyc.push(u);
            u = self.next[u];
        }
        let mean = cyc.iter().map(|&c| self.weight[c]).sum::<f64>() / cyc.len() as f64;
        (mean, cyc)
    }
}

/// Minimum cycle mean of `d` by policy iteration. Every node must have an
/// out-arc.
pub(crate) fn howard(d: &Digraph) -> Result<(f64, Vec<usize>)> {
    if d.nodes() == 0 {
        return Err(Error::invalid("empty graph"));
    }
    let tol = TOLERANCE * d.max_abs_weight().max(1.0);
    let mut p = Policy::initial(d)?;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        p.evaluate();
        if !p.improve(d, tol) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical("policy iteration did not converge".into()));
    }
    // Exactness sweep: keep improving on any strict decrease, keeping the
    // best cycle seen in case rounding makes the policy oscillate.
    let mut best = p.best_cycle();
    for _ in 0..SWEEP_ITERATIONS {
        if !p.improve(d, 0.0) {
            break;
        }
        p.evaluate();
        let cand = p.best_cycle();
        if cand.0 < best.0 {
            best = cand;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::karp::karp;

    #[test]
    fn two_cycle() {
        let d = Digraph::from_arcs(2, &[(0, 1, 1.0), (1, 0, 3.0)]);
        assert_eq!(howard(&d).unwrap().0, 2.0);
    }

    #[test]
    fn agrees_with_karp_on_sparse_graph() {
        let arcs = [
            (0, 1, 1.0),
            (1, 2, 2.0),
            (2, 0, 3.0),
            (2, 3, 0.1),
            (3, 4, 1.0),
            (4, 3, 2.0),
            (4, 0, 0.5),
        ];
        let d = Digraph::from_arcs(5, &arcs);
        let (h, _) = howard(&d).unwrap();
        let (k, _) = karp(&d).unwrap();
        assert!((h - k).abs() < 1e-12);
    }

    #[test]
    fn dead_end_is_an_error() {
        let d = Digraph::from_arcs(2, &[(0, 1, 1.0)]);
        assert!(howard(&d).is_err());
    }
}
