//! Random complete graphs, cycles and lightness predicates.

mod hexfloat;
mod io;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

pub use hexfloat::{format_hex_float, parse_hex_float};
pub use io::{
    read_binary, read_csv, read_instance, write_binary, write_csv, write_instance, InstanceFormat,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Directed,
    Undirected,
}

impl Orientation {
    /// Shortest simple cycle: 2 arcs when directed, 3 edges when undirected.
    pub fn min_cycle_len(self) -> usize {
        match self {
            Orientation::Directed => 2,
            Orientation::Undirected => 3,
        }
    }

    pub fn min_vertices(self) -> usize {
        self.min_cycle_len()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Directed => "directed",
            Orientation::Undirected => "undirected",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "directed" => Ok(Orientation::Directed),
            "undirected" => Ok(Orientation::Undirected),
            other => Err(Error::Parse(format!("unknown orientation `{other}`"))),
        }
    }
}

/// Dense complete graph with positive edge weights.
///
/// Weights live in a flat row-major `n x n` array. Undirected instances store
/// both triangles, and the diagonal holds `+inf` so that min-plus relaxations
/// never pick a self-loop.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInstance {
    n: usize,
    orientation: Orientation,
    seed: u64,
    weights: Vec<f64>,
}

/// Draw a complete graph with i.i.d. Exp(1) weights.
///
/// The weight of edge `(i, j)` depends only on `(seed, i, j)` (on the
/// unordered pair when undirected).
pub fn sample_complete(n: usize, orientation: Orientation, seed: u64) -> Result<GraphInstance> {
    check_order(n, orientation)?;
    let mut weights = vec![f64::INFINITY; n * n];
    match orientation {
        Orientation::Directed => {
            for i in 0..n {
                let row = &mut weights[i * n..(i + 1) * n];
                for (j, w) in row.iter_mut().enumerate() {
                    if i != j {
                        *w = rng::exp1(seed, i as u64, j as u64);
                    }
                }
            }
        }
        Orientation::Undirected => {
            for i in 0..n {
                for j in i + 1..n {
                    let w = rng::exp1(seed, i as u64, j as u64);
                    weights[i * n + j] = w;
                    weights[j * n + i] = w;
                }
            }
        }
    }
    Ok(GraphInstance {
        n,
        orientation,
        seed,
        weights,
    })
}

fn check_order(n: usize, orientation: Orientation) -> Result<()> {
    if n < orientation.min_vertices() {
        return Err(Error::invalid(format!(
            "{orientation} complete graph needs n >= {}, got {n}",
            orientation.min_vertices()
        )));
    }
    if n > u32::MAX as usize {
        return Err(Error::invalid(format!("n = {n} is too large")));
    }
    Ok(())
}

impl GraphInstance {
    /// Build an instance from an explicit row-major `n x n` matrix. Diagonal
    /// entries are ignored. Undirected matrices must be symmetric.
    pub fn from_matrix(
        n: usize,
        orientation: Orientation,
        seed: u64,
        matrix: &[f64],
    ) -> Result<Self> {
        check_order(n, orientation)?;
        if matrix.len() != n * n {
            return Err(Error::invalid(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                n * n
            )));
        }
        let mut weights = matrix.to_vec();
        for i in 0..n {
            weights[i * n + i] = f64::INFINITY;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = weights[i * n + j];
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::invalid(format!(
                        "weight ({i},{j}) = {w} is not positive and finite"
                    )));
                }
                if orientation == Orientation::Undirected && w != weights[j * n + i] {
                    return Err(Error::invalid(format!(
                        "undirected weights differ at ({i},{j})"
                    )));
                }
            }
        }
        Ok(GraphInstance {
            n,
            orientation,
            seed,
            weights,
        })
    }

    /// Build from an edge list. Directed lists must name every arc once;
    /// undirected lists every unordered pair once.
    pub fn from_edges(
        n: usize,
        orientation: Orientation,
        seed: u64,
        edges: &[(usize, usize, f64)],
    ) -> Result<Self> {
        check_order(n, orientation)?;
        let mut matrix = vec![f64::NAN; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::invalid(format!("bad edge ({i},{j}) for n = {n}")));
            }
            let slots: &[(usize, usize)] = match orientation {
                Orientation::Directed => &[(i, j)],
                Orientation::Undirected => &[(i, j), (j, i)],
            };
            for &(a, b) in slots {
                if !matrix[a * n + b].is_nan() {
                    return Err(Error::invalid(format!("edge ({i},{j}) listed twice")));
                }
                matrix[a * n + b] = w;
            }
        }
        if let Some(pos) = (0..n * n).find(|&p| p / n != p % n && matrix[p].is_nan()) {
            return Err(Error::invalid(format!(
                "edge ({},{}) missing",
                pos / n,
                pos % n
            )));
        }
        Self::from_matrix(n, orientation, seed, &matrix)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Outgoing weights of `i`; entry `i` is `+inf`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.weights
    }

    /// Edges with their weights: every arc when directed, `i < j` pairs when
    /// undirected.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        let undirected = self.orientation == Orientation::Undirected;
        (0..n).flat_map(move |i| {
            let start = if undirected { i + 1 } else { 0 };
            (start..n)
                .filter(move |&j| j != i)
                .map(move |j| (i, j, self.weights[i * n + j]))
        })
    }

    pub fn edge_count(&self) -> usize {
        match self.orientation {
            Orientation::Directed => self.n * (self.n - 1),
            Orientation::Undirected => self.n * (self.n - 1) / 2,
        }
    }

    /// Total weight of the closed walk through `vertices`.
    pub fn closed_walk_weight(&self, vertices: &[usize]) -> f64 {
        let k = vertices.len();
        (0..k)
            .map(|i| self.weight(vertices[i], vertices[(i + 1) % k]))
            .sum()
    }
}

/// A simple cycle together with its edge weights in traversal order.
///
/// `edge_weights[i]` is the weight of the edge leaving `vertices[i]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<usize>,
    edge_weights: Vec<f64>,
    total_weight: f64,
}

impl Cycle {
    /// The cycle of `g` through `vertices` in the given order.
    pub fn in_graph(g: &GraphInstance, vertices: Vec<usize>) -> Result<Self> {
        let k = vertices.len();
        let min = g.orientation().min_cycle_len();
        if k < min {
            return Err(Error::invalid(format!(
                "{} cycle needs at least {min} vertices, got {k}",
                g.orientation()
            )));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("vertex {v} repeated")));
            }
        }
        let edge_weights: Vec<f64> = (0..k)
            .map(|i| g.weight(vertices[i], vertices[(i + 1) % k]))
            .collect();
        Ok(Self::assemble(vertices, edge_weights))
    }

    /// A cycle given only by its edge weights; vertices are labelled `0..L`.
    pub fn from_edge_weights(edge_weights: Vec<f64>) -> Result<Self> {
        if edge_weights.is_empty() {
            return Err(Error::invalid("cycle needs at least one edge"));
        }
        if let Some(w) = edge_weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::invalid(format!("bad edge weight {w}")));
        }
        let vertices = (0..edge_weights.len()).collect();
        Ok(Self::assemble(vertices, edge_weights))
    }

    fn assemble(vertices: Vec<usize>, edge_weights: Vec<f64>) -> Self {
        let total_weight = edge_weights.iter().sum();
        Cycle {
            vertices,
            edge_weights,
            total_weight,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn mean_weight(&self) -> f64 {
        self.total_weight / self.len() as f64
    }

    pub fn max_weight(&self) -> f64 {
        self.edge_weights.iter().copied().fold(0.0, f64::max)
    }

    /// Rotation starting at the smallest vertex id. With `undirected` the
    /// direction is also fixed so that the second vertex is smaller than the
    /// last one.
    pub fn canonical_vertices(&self, undirected: bool) -> Vec<usize> {
        canonical_form(&self.vertices, undirected)
    }

    /// Whether `self` and `other` are the same cycle up to rotation (and
    /// reversal when `undirected`).
    pub fn same_cycle(&self, other: &Cycle, undirected: bool) -> bool {
        self.canonical_vertices(undirected) == other.canonical_vertices(undirected)
    }
}

/// Canonical rotation (and direction) of a vertex cycle.
pub fn canonical_form(vertices: &[usize], undirected: bool) -> Vec<usize> {
    let k = vertices.len();
    if k == 0 {
        return Vec::new();
    }
    let start = (0..k).min_by_key(|&i| vertices[i]).unwrap_or(0);
    let mut out: Vec<usize> = (0..k).map(|i| vertices[(start + i) % k]).collect();
    if undirected && k > 2 && out[1] > out[k - 1] {
        out[1..].reverse();
    }
    out
}

/// Relative allowance for rounding in boundary comparisons.
const ROUNDING: f64 = 4.0 * f64::EPSILON;

/// `c`-lightness: mean weight at most `c / n` (non-strict, up to a few ulps).
pub fn is_light(cycle: &Cycle, c: f64, n: usize) -> bool {
    let bound = cycle.len() as f64 * c / n as f64;
    cycle.total_weight() <= bound + ROUNDING * bound.abs()
}

/// `A`-uniform `c`-lightness: the cycle is `c`-light and every cyclic
/// subpath of `l` edges weighs at most `(l + A) c / n`.
pub fn is_uniformly_light(cycle: &Cycle, slack: f64, c: f64, n: usize) -> bool {
    is_light(cycle, c, n) && windows_within_slack(cycle.edge_weights(), slack, c / n as f64)
}

/// Whether every cyclic window of `weights` satisfies
/// `sum(window) <= (len(window) + slack) * unit`.
///
/// One pass over the prefix sums `Q_j` of `w_i - unit` (`Q_0 = 0`): plain
/// windows are `Q_e - Q_s` with `0 <= s < e <= L`, wrapping windows are
/// `Q_L + Q_e - Q_s` with `1 <= e <= s <= L - 1`.
pub fn windows_within_slack(weights: &[f64], slack: f64, unit: f64) -> bool {
    let len = weights.len();
    if len == 0 {
        return true;
    }
    let spread: f64 = weights.iter().map(|w| (w - unit).abs()).sum();
    let bound = slack * unit;
    let bound = bound + ROUNDING * bound.abs() + len as f64 * f64::EPSILON * spread;

    let mut q = 0.0f64;
    let mut min_start = 0.0f64;
    for w in weights {
        q += w - unit;
        if q - min_start > bound {
            return false;
        }
        min_start = min_start.min(q);
    }
    let total = q;

    let mut q = 0.0f64;
    let mut max_end = f64::NEG_INFINITY;
    for w in &weights[..len - 1] {
        q += w - unit;
        max_end = max_end.max(q);
        if total + max_end - q > bound {
            return false;
        }
    }
    true
}
