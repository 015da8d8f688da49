use std::collections::HashMap;
use std::f64::consts::{E, PI};

use statrs::function::gamma::ln_gamma;

use super::gamma::ln_gamma_p;
use super::quadrature::integrate;
use super::tree::{tree_function, CRITICAL};
use super::{LimitLaw, Objective};
use crate::error::{Error, Result};
use crate::instances::Orientation;

const PMF_TOL: f64 = 1e-9;

/// Limit of the expected number of `c`-light cycles (all lengths):
/// `T(c) - c` directed, `(T(c) - c - c^2)/2` undirected.
pub fn expected_light_count_limit(c: f64, orientation: Orientation) -> Result<f64> {
    let t = tree_function(c)?;
    Ok(match orientation {
        Orientation::Directed => t - c,
        Orientation::Undirected => (t - c - c * c) / 2.0,
    })
}

/// As [`expected_light_count_limit`] but `+inf` for `c > 1/e`, where the
/// count diverges.
pub fn expected_light_count_limit_or_inf(c: f64, orientation: Orientation) -> Result<f64> {
    if c > CRITICAL && c.is_finite() {
        return Ok(f64::INFINITY);
    }
    expected_light_count_limit(c, orientation)
}

/// Exact expected number of `c`-light `k`-cycles in the complete graph on
/// `n` vertices: `N_k * Pr[Gamma(k) <= c k / n]`.
pub fn expected_light_count_exact(
    n: usize,
    k: usize,
    c: f64,
    orientation: Orientation,
) -> Result<f64> {
    let k_min = orientation.min_cycle_len();
    if k < k_min || k > n {
        return Err(Error::domain(format!(
            "need {k_min} <= k <= n for {orientation} cycles, got k={k}, n={n}"
        )));
    }
    if !(c >= 0.0) {
        return Err(Error::domain(format!("c must be >= 0, got {c}")));
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    // ln N_k = sum_{i<k} ln(n - i) - ln k (- ln 2)
    let mut ln_count: f64 = (0..k).map(|i| ((n - i) as f64).ln()).sum::<f64>() - (k as f64).ln();
    if orientation == Orientation::Undirected {
        ln_count -= 2f64.ln();
    }
    let x = c * k as f64 / n as f64;
    Ok((ln_count + ln_gamma_p(k as f64, x)).exp())
}

/// Limiting probability that the optimum, scaled by `n`, is at most `c`.
pub fn limit_cdf(c: f64, variant: LimitLaw) -> Result<f64> {
    if !(c >= 0.0) {
        return Err(Error::domain(format!("c must be >= 0, got {c}")));
    }
    if c > variant.threshold() {
        return Ok(1.0);
    }
    Ok(match variant {
        LimitLaw::DirectedMean => -(c - tree_function(c)?).exp_m1(),
        LimitLaw::UndirectedMean => {
            let t = tree_function(c)?;
            -((c + c * c - t) / 2.0).exp_m1()
        }
        LimitLaw::UndirectedMax => 1.0 - (1.0 - c).sqrt() * (c / 2.0 + c * c / 4.0).exp(),
        LimitLaw::DirectedMax => 1.0 - (1.0 - c) * c.exp(),
    })
}

/// Total limiting mass on finite lengths. Below 1 for the mean variants:
/// the rest is the jump of the CDF at `1/e`.
pub fn pmf_sum(variant: LimitLaw) -> f64 {
    match variant {
        LimitLaw::DirectedMean => -(-1.0 + 1.0 / E).exp_m1(),
        LimitLaw::UndirectedMean => -(-0.5 + 1.0 / (2.0 * E) + 1.0 / (2.0 * E * E)).exp_m1(),
        LimitLaw::UndirectedMax | LimitLaw::DirectedMax => 1.0,
    }
}

/// Leading constant of `p_k`: `p_k ~ C k^{-3/2}`, or `C k^{-2}` for the
/// directed max variant.
pub fn tail_constant(variant: LimitLaw) -> f64 {
    let root_2pi = (2.0 * PI).sqrt();
    match variant {
        LimitLaw::DirectedMean => (-1.0 + 1.0 / E).exp() / root_2pi,
        LimitLaw::UndirectedMean => {
            (-0.5 + 1.0 / (2.0 * E) + 1.0 / (2.0 * E * E)).exp() / (2.0 * root_2pi)
        }
        LimitLaw::UndirectedMax => PI.sqrt() / 4.0 * 0.75f64.exp(),
        LimitLaw::DirectedMax => E,
    }
}

/// Leading-order `p_k` for large `k`.
pub fn tail_asymptote(k: usize, variant: LimitLaw) -> Result<f64> {
    check_k(k, variant)?;
    let k = k as f64;
    let power = if variant == LimitLaw::DirectedMax {
        2.0
    } else {
        1.5
    };
    Ok(tail_constant(variant) * k.powf(-power))
}

fn check_k(k: usize, variant: LimitLaw) -> Result<()> {
    if k < variant.k_min() {
        return Err(Error::domain(format!(
            "{variant} needs k >= {}, got {k}",
            variant.k_min()
        )));
    }
    Ok(())
}

/// Limiting probability that the optimal cycle has length `k`.
pub fn length_pmf(k: usize, variant: LimitLaw) -> Result<f64> {
    PmfEvaluator::new().pmf(k, variant)
}

/// Evaluates `p_k` repeatedly, caching `T(c)` at quadrature nodes.
///
/// Mean variants are integrated in `u` with `c = (1 - u^2)/e`, which
/// removes the square-root behaviour of `T` at `1/e`. The undirected max
/// variant uses `c = 1 - v^2` for its `sqrt(1 - c)` factor.
#[derive(Debug, Default)]
pub struct PmfEvaluator {
    tree: HashMap<u64, f64>,
}

impl PmfEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    fn tree(&mut self, c: f64) -> f64 {
        *self
            .tree
            .entry(c.to_bits())
            .or_insert_with(|| tree_function(c).expect("node inside [0, 1/e]"))
    }

    pub fn pmf(&mut self, k: usize, variant: LimitLaw) -> Result<f64> {
        check_k(k, variant)?;
        let kf = k as f64;
        // ln(k^k / k!)
        let ln_pref = kf * kf.ln() - ln_gamma(kf + 1.0);
        let v = match variant {
            LimitLaw::DirectedMean => integrate(
                |u| {
                    let c = (1.0 - u * u) / E;
                    if c <= 0.0 {
                        return 0.0;
                    }
                    let t = self.tree(c);
                    (ln_pref + kf * c.ln() + c).exp() / t * (2.0 * u / E)
                },
                0.0,
                1.0,
                PMF_TOL,
            ),
            LimitLaw::UndirectedMean => integrate(
                |u| {
                    let c = (1.0 - u * u) / E;
                    if c <= 0.0 {
                        return 0.0;
                    }
                    let t = self.tree(c);
                    let ln = ln_pref - 2f64.ln() + (kf - 0.5) * c.ln() + c / 2.0 + c * c / 2.0;
                    ln.exp() / t.sqrt() * (2.0 * u / E)
                },
                0.0,
                1.0,
                PMF_TOL,
            ),
            LimitLaw::UndirectedMax => integrate(
                |v| {
                    let c = 1.0 - v * v;
                    if c <= 0.0 {
                        return 0.0;
                    }
                    0.5 * ((kf - 1.0) * c.ln() + c / 2.0 + c * c / 4.0).exp() * v * 2.0 * v
                },
                0.0,
                1.0,
                PMF_TOL,
            ),
            LimitLaw::DirectedMax => integrate(
                |c| {
                    if c <= 0.0 {
                        return 0.0;
                    }
                    ((kf - 1.0) * c.ln() + c).exp() * (1.0 - c)
                },
                0.0,
                1.0,
                PMF_TOL,
            ),
        };
        Ok(v)
    }
}

impl LimitLaw {
    /// Whether the limiting CDF jumps at its threshold.
    pub fn has_jump(self) -> bool {
        self.objective() == Objective::Mean
    }
}
