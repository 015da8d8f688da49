//! Compact digraphs fed to the Karp and Howard solvers.
//!
//! A directed instance maps to a digraph on its vertices. An undirected
//! instance maps to its non-backtracking arc graph: one node per oriented
//! edge `t -> h`, and an arc `(t -> h) => (h -> x)` for every `x != t`,
//! weighted by the destination edge. Cycles of the arc graph are closed
//! walks that never immediately reverse an edge, so a 2-cycle `i-j-i` is
//! not representable.

use crate::instances::{GraphInstance, Orientation};

#[derive(Debug, Clone)]
pub(crate) struct Digraph {
    nodes: usize,
    out_start: Vec<usize>,
    out_to: Vec<u32>,
    out_w: Vec<f64>,
    in_start: Vec<usize>,
    in_from: Vec<u32>,
    in_w: Vec<f64>,
}

impl Digraph {
    pub fn from_arcs(nodes: usize, arcs: &[(u32, u32, f64)]) -> Self {
        let (out_start, out_to, out_w) = csr(nodes, arcs.iter().map(|&(a, b, w)| (a, b, w)));
        let (in_start, in_from, in_w) = csr(nodes, arcs.iter().map(|&(a, b, w)| (b, a, w)));
        Digraph {
            nodes,
            out_start,
            out_to,
            out_w,
            in_start,
            in_from,
            in_w,
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    #[cfg(test)]
    pub fn arc_count(&self) -> usize {
        self.out_to.len()
    }

    #[inline]
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.out_start[v]..self.out_start[v + 1];
        self.out_to[r.clone()]
            .iter()
            .zip(&self.out_w[r])
            .map(|(&u, &w)| (u as usize, w))
    }

    #[inline]
    pub fn in_arcs(&self, v: usize) -> (&[u32], &[f64]) {
        let r = self.in_start[v]..self.in_start[v + 1];
        (&self.in_from[r.clone()], &self.in_w[r])
    }

    pub fn max_abs_weight(&self) -> f64 {
        self.out_w.iter().fold(0.0, |m, w| m.max(w.abs()))
    }

    /// Weight of the arc `a -> b` (the lightest one if several).
    #[cfg(test)]
    pub fn arc_weight(&self, a: usize, b: usize) -> Option<f64> {
        self.out_arcs(a)
            .filter(|&(u, _)| u == b)
            .map(|(_, w)| w)
            .reduce(f64::min)
    }
}

fn csr(
    nodes: usize,
    arcs: impl Iterator<Item = (u32, u32, f64)> + Clone,
) -> (Vec<usize>, Vec<u32>, Vec<f64>) {
    let mut start = vec![0usize; nodes + 1];
    for (a, _, _) in arcs.clone() {
        start[a as usize + 1] += 1;
    }
    for i in 0..nodes {
        start[i + 1] += start[i];
    }
    let m = start[nodes];
    let mut fill = start.clone();
    let mut to = vec![0u32; m];
    let mut w = vec![0.0; m];
    for (a, b, wt) in arcs {
        let slot = &mut fill[a as usize];
        to[*slot] = b;
        w[*slot] = wt;
        *slot += 1;
    }
    (start, to, w)
}

/// A digraph together with the map from its nodes back to instance vertices.
#[derive(Debug, Clone)]
pub(crate) struct Lifted {
    pub graph: Digraph,
    lift: Lift,
}

#[derive(Debug, Clone)]
enum Lift {
    /// Node `i` is vertex `ids[i]`.
    Vertices(Vec<usize>),
    /// Node `i` is the oriented edge `tails[i] -> heads[i]`.
    Arcs { tails: Vec<usize> },
}

impl Lifted {
    /// Build the solver graph of `g` keeping only edges of weight `<= cap`,
    /// then drop nodes that cannot lie on a cycle (no in- or out-arcs,
    /// repeatedly).
    pub fn build(g: &GraphInstance, cap: f64) -> Self {
        match g.orientation() {
            Orientation::Directed => vertex_graph(g, cap),
            Orientation::Undirected => arc_graph(g, cap),
        }
    }

    /// Translate a node cycle into the instance's closed vertex walk.
    pub fn walk(&self, nodes: &[usize]) -> Vec<usize> {
        match &self.lift {
            Lift::Vertices(ids) => nodes.iter().map(|&v| ids[v]).collect(),
            Lift::Arcs { tails } => nodes.iter().map(|&v| tails[v]).collect(),
        }
    }
}

fn vertex_graph(g: &GraphInstance, cap: f64) -> Lifted {
    let n = g.n();
    let keep = trim(n, |v| {
        g.row(v)
            .iter()
            .enumerate()
            .filter(move |&(u, &w)| u != v && w <= cap)
            .map(|(u, _)| u)
    });
    let (index, ids) = relabel(&keep);
    let mut arcs = Vec::new();
    for &v in &ids {
        for (u, &w) in g.row(v).iter().enumerate() {
            if u != v && w <= cap && keep[u] {
                arcs.push((index[v], index[u], w));
            }
        }
    }
    Lifted {
        graph: Digraph::from_arcs(ids.len(), &arcs),
        lift: Lift::Vertices(ids),
    }
}

fn arc_graph(g: &GraphInstance, cap: f64) -> Lifted {
    let n = g.n();
    // Vertices of degree < 2 in the kept subgraph cannot be on a cycle.
    let mut keep_vertex = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if !keep_vertex[v] {
                continue;
            }
            let degree = (0..n)
                .filter(|&u| u != v && keep_vertex[u] && g.weight(v, u) <= cap)
                .take(2)
                .count();
            if degree < 2 {
                keep_vertex[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut node_of = vec![u32::MAX; n * n];
    let mut tails = Vec::new();
    let mut heads = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t != h && keep_vertex[t] && keep_vertex[h] && g.weight(t, h) <= cap {
                node_of[t * n + h] = tails.len() as u32;
                tails.push(t);
                heads.push(h);
            }
        }
    }
    let mut arcs = Vec::new();
    for (s, (&t, &h)) in tails.iter().zip(&heads).enumerate() {
        for x in 0..n {
            if x == t {
                continue;
            }
            let next = node_of[h * n + x];
            if next != u32::MAX {
                arcs.push((s as u32, next, g.weight(h, x)));
            }
        }
    }
    Lifted {
        graph: Digraph::from_arcs(tails.len(), &arcs),
        lift: Lift::Arcs { tails },
    }
}

/// Iteratively drop vertices without surviving in- or out-neighbours.
fn trim<I: Iterator<Item = usize>>(n: usize, out: impl Fn(usize) -> I) -> Vec<bool> {
    let lists: Vec<Vec<usize>> = (0..n).map(|v| out(v).collect()).collect();
    let mut keep = vec![true; n];
    loop {
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for v in (0..n).filter(|&v| keep[v]) {
            for &u in lists[v].iter().filter(|&&u| keep[u]) {
                outdeg[v] += 1;
                indeg[u] += 1;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if keep[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                keep[v] = false;
                changed = true;
            }
        }
        if !changed {
            return keep;
        }
    }
}

fn relabel(keep: &[bool]) -> (Vec<u32>, Vec<usize>) {
    let mut index = vec![u32::MAX; keep.len()];
    let mut ids = Vec::new();
    for (v, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
        index[v] = ids.len() as u32;
        ids.push(v);
    }
    (index, ids)
}
