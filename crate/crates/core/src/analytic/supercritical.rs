//! Quantities bounding the optimum above the threshold `1/e`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::instances::Orientation;

const HALF_PI_SQ: f64 = PI * PI / 2.0;

/// `exp(-(pi^2/2) L / A^2)`: leading-order probability that a random
/// length-`L` cycle, scaled to be exactly light, is `A`-uniformly light.
pub fn uniform_light_probability_estimate(l: f64, a: f64) -> Result<f64> {
    if !(l >= 1.0 && a > 0.0) {
        return Err(Error::domain(format!(
            "need L >= 1 and A > 0, got L={l}, A={a}"
        )));
    }
    Ok((-HALF_PI_SQ * l / (a * a)).exp())
}

/// Parameters of the uniform-lightness window: cycles of length in
/// `(l1, l2]` that are `A`-uniformly `(1 + delta)/e`-light.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupercriticalParams {
    pub a: f64,
    pub delta: f64,
    pub l1: u64,
    pub l2: u64,
    pub orientation: Orientation,
}

impl SupercriticalParams {
    pub fn new(a: f64, delta: f64, l1: u64, l2: u64, orientation: Orientation) -> Result<Self> {
        if !(a > 0.0 && delta >= 0.0 && l1 < l2) {
            return Err(Error::domain(format!(
                "need A > 0, delta >= 0, L1 < L2; got A={a}, delta={delta}, L1={l1}, L2={l2}"
            )));
        }
        Ok(SupercriticalParams {
            a,
            delta,
            l1,
            l2,
            orientation,
        })
    }

    /// The choice `A = (1-eps) ln n`, `delta = (pi^2/2 + 13 eps)/ln^2 n`,
    /// `L2 = ln^2 n * ln ln n / eps`, `L1 = L2 - 1`.
    pub fn from_epsilon(n: f64, eps: f64, orientation: Orientation) -> Result<Self> {
        if !(n >= 16.0 && eps > 0.0 && eps < 1.0) {
            return Err(Error::domain(format!(
                "need n >= 16 and 0 < eps < 1, got n={n}, eps={eps}"
            )));
        }
        let ln = n.ln();
        let a = (1.0 - eps) * ln;
        let delta = (HALF_PI_SQ + 13.0 * eps) / (ln * ln);
        let l2 = (ln * ln * ln.ln() / eps).round().max(2.0) as u64;
        Self::new(a, delta, l2 - 1, l2, orientation)
    }
}

/// `sum_{L=L1+1}^{L2} (1+delta)^L L^{-3/2} exp(-(pi^2/2) L/A^2)`, halved
/// for undirected graphs; summed in log space.
pub fn expected_uniform_light_count(p: &SupercriticalParams) -> f64 {
    let ln_growth = p.delta.ln_1p();
    let decay = HALF_PI_SQ / (p.a * p.a);
    let total: f64 = (p.l1 + 1..=p.l2)
        .map(|l| {
            let l = l as f64;
            (l * ln_growth - 1.5 * l.ln() - decay * l).exp()
        })
        .sum();
    match p.orientation {
        Orientation::Directed => total,
        Orientation::Undirected => total / 2.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceBound {
    /// Upper bound on `E[Y^2] / E[Y]^2`: `1 + 2 L2^3 e^A (1+delta)^L2 / n`.
    pub ratio: f64,
    /// `L2^3 e^A / n`; the bound is only claimed when this is `<= 1/2`.
    pub precondition: f64,
    pub precondition_holds: bool,
}

pub fn variance_ratio_bound(p: &SupercriticalParams, n: f64) -> VarianceBound {
    let l2 = p.l2 as f64;
    let ln_pre = 3.0 * l2.ln() + p.a - n.ln();
    let precondition = ln_pre.exp();
    let ratio = 1.0 + 2.0 * (ln_pre + l2 * p.delta.ln_1p()).exp();
    VarianceBound {
        ratio,
        precondition,
        precondition_holds: precondition <= 0.5,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupercriticalBounds {
    /// `(1 + (pi^2/2)/ln^2 n) / (e n)`, leading order.
    pub weight_upper: f64,
    /// `(2/pi^2) ln^2 n ln ln n`, leading order.
    pub length_lower: f64,
}

/// Leading-order envelopes for the optimum above threshold. Natural logs;
/// `n >= 16` keeps `ln ln n` comfortably positive.
pub fn supercritical_bounds(n: u64) -> Result<SupercriticalBounds> {
    if n < 16 {
        return Err(Error::domain(format!("need n >= 16, got {n}")));
    }
    let nf = n as f64;
    let ln = nf.ln();
    Ok(SupercriticalBounds {
        weight_upper: (1.0 + HALF_PI_SQ / (ln * ln)) / (E * nf),
        length_lower: 2.0 / (PI * PI) * ln * ln * ln.ln(),
    })
}

const BAND_TERM_FLOOR: f64 = 1e-15;

/// `Pr[max_{t<=T} |B_t| < a]` for standard Brownian motion:
/// `(4/pi) sum_j (-1)^j/(2j+1) exp(-(2j+1)^2 pi^2 T / (8 a^2))`, stopped
/// once a term drops below `1e-15` or after `terms` terms.
pub fn brownian_band_probability(t: f64, a: f64, terms: usize) -> Result<f64> {
    if !(t > 0.0 && a > 0.0 && terms >= 1) {
        return Err(Error::domain(format!(
            "need T > 0, a > 0, terms >= 1; got T={t}, a={a}, terms={terms}"
        )));
    }
    let rate = PI * PI * t / (8.0 * a * a);
    let mut sum = 0.0;
    for j in 0..terms {
        let odd = (2 * j + 1) as f64;
        let term = (-odd * odd * rate).exp() / odd;
        sum += if j % 2 == 0 { term } else { -term };
        if term < BAND_TERM_FLOOR {
            break;
        }
    }
    Ok((4.0 / PI * sum).clamp(0.0, 1.0))
}
