use super::{SolveResult, SolverKind};
use crate::error::{Error, Result};
use crate::instances::{Cycle, GraphInstance, Orientation};

pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Exhaustive minimum over all simple cycles. Refuses `n > 9`.
pub fn brute_force_min_mean(g: &GraphInstance) -> Result<SolveResult> {
    if g.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge {
            solver: "brute_force",
            n: g.n(),
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    enumerate_cycles(g, |vs, total| {
        let mean = total / vs.len() as f64;
        if best.as_ref().is_none_or(|(b, _)| mean < *b) {
            best = Some((mean, vs.to_vec()));
        }
    });
    let (_, vs) = best.expect("complete graph has a cycle");
    let witness = Cycle::in_graph(g, vs)?;
    Ok(SolveResult::new(g, witness, SolverKind::BruteForce, true))
}

/// Visit every simple cycle of `g` once, in canonical form, with its total
/// weight. Order is lexicographic in the canonical vertex sequence.
pub fn enumerate_cycles(g: &GraphInstance, mut visit: impl FnMut(&[usize], f64)) {
    let n = g.n();
    let undirected = g.orientation() == Orientation::Undirected;
    let min_len = g.orientation().min_cycle_len();
    let mut path = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for s in 0..n {
        path.push(s);
        used[s] = true;
        extend(
            g, s, min_len, undirected, 0.0, &mut path, &mut used, &mut visit,
        );
        used[s] = false;
        path.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &GraphInstance,
    s: usize,
    min_len: usize,
    undirected: bool,
    weight: f64,
    path: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize], f64),
) {
    let v = *path.last().unwrap();
    let k = path.len();
    if k >= min_len && (!undirected || path[1] < path[k - 1]) {
        visit(path, weight + g.weight(v, s));
    }
    for u in s + 1..g.n() {
        if used[u] {
            continue;
        }
        used[u] = true;
        path.push(u);
        extend(
            g,
            s,
            min_len,
            undirected,
            weight + g.weight(v, u),
            path,
            used,
            visit,
        );
        path.pop();
        used[u] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::sample_complete;

    fn count(n: usize, o: Orientation) -> usize {
        let g = sample_complete(n, o, 0).unwrap();
        let mut c = 0;
        enumerate_cycles(&g, |_, _| c += 1);
        c
    }

    /// Number of k-cycles in the complete graph: n!/((n-k)! k), halved when
    /// undirected.
    fn combinatorial(n: usize, o: Orientation) -> usize {
        let mut total = 0;
        for k in o.min_cycle_len()..=n {
            let falling: usize = (n - k + 1..=n).product();
            let mut c = falling / k;
            if o == Orientation::Undirected {
                c /= 2;
            }
            total += c;
        }
        total
    }

    #[test]
    fn directed_four_has_twenty_cycles() {
        assert_eq!(count(4, Orientation::Directed), 20);
    }

    #[test]
    fn undirected_four_has_seven_cycles() {
        assert_eq!(count(4, Orientation::Undirected), 7);
    }

    #[test]
    fn counts_match_formula() {
        for n in 2..=8 {
            assert_eq!(
                count(n, Orientation::Directed),
                combinatorial(n, Orientation::Directed)
            );
            if n >= 3 {
                assert_eq!(
                    count(n, Orientation::Undirected),
                    combinatorial(n, Orientation::Undirected)
                );
            }
        }
    }

    #[test]
    fn refuses_large_n() {
        let g = sample_complete(10, Orientation::Directed, 0).unwrap();
        assert!(matches!(
            brute_force_min_mean(&g),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn all_equal_weights_pick_first_two_cycle() {
        let m = vec![1.0; 9];
        let g = GraphInstance::from_matrix(3, Orientation::Directed, 0, &m).unwrap();
        let r = brute_force_min_mean(&g).unwrap();
        assert_eq!(r.min_mean, 1.0);
        assert_eq!(r.witness.vertices(), &[0, 1]);
    }
}
