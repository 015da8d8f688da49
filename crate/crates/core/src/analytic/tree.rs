//! The tree function `T(c) = sum_{k>=1} k^{k-1} c^k / k!`, the root of
//! `t = c e^t` on `[0, 1]`. Related to Lambert's W by `W(z) = -T(-z)`.

use crate::error::{Error, Result};

/// `1/e`, where `T` reaches 1 and the branch point sits.
pub const CRITICAL: f64 = 0.367_879_441_171_442_33;

/// Inputs within this relative distance of `1/e` evaluate to exactly 1.
/// Near the branch point `1 - T ~ sqrt(2*(1 - c e))`, so one ulp in `c`
/// already moves `T` by about `1e-8`.
const CRITICAL_SNAP: f64 = 4.0 * f64::EPSILON;

/// `T(c)` for `0 <= c <= 1/e` (principal branch).
pub fn tree_function(c: f64) -> Result<f64> {
    if !(0.0..=CRITICAL * (1.0 + CRITICAL_SNAP)).contains(&c) {
        return Err(Error::domain(format!(
            "tree function needs 0 <= c <= 1/e, got {c}"
        )));
    }
    if c >= CRITICAL * (1.0 - CRITICAL_SNAP) {
        return Ok(1.0);
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(if c < 0.25 {
        newton_t(c)
    } else {
        1.0 - newton_s(c)
    })
}

/// Newton on `t - c e^t` from `t = 0`. The function is concave and
/// increasing below the root, so the iterates rise monotonically.
fn newton_t(c: f64) -> f64 {
    let mut t = 0.0f64;
    for _ in 0..100 {
        let ct = c * t.exp();
        let next = t - (t - ct) / (1.0 - ct);
        if !(next > t) {
            break;
        }
        t = next;
    }
    t
}

/// Solve for `s = 1 - T` from `-ln(1-s) - s = -1 - ln c`, which is
/// well conditioned near the branch point. The left side is convex and
/// increasing in `s`; starting at `sqrt(2*eta)`, an over-estimate, Newton
/// descends monotonically.
fn newton_s(c: f64) -> f64 {
    let eta = -1.0 - c.ln();
    let g = |s: f64| -(-s).ln_1p() - s - eta;
    let mut s = (2.0 * eta).sqrt().min(1.0 - 1e-3);
    // The start must be right of the root; pull it in if rounding put it
    // on the wrong side.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let v = g(s);
        if v > 0.0 {
            hi = hi.min(s);
        } else {
            lo = lo.max(s);
        }
        let d = s / (1.0 - s);
        let mut next = s - v / d;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - s).abs() <= 1e-17 + 1e-16 * s {
            s = next;
            break;
        }
        s = next;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(c: f64) -> f64 {
        // sum k^{k-1} c^k / k!, terms in log space
        (1..200)
            .map(|k| {
                let k = k as f64;
                ((k - 1.0) * k.ln() + k * c.ln() - statrs::function::gamma::ln_gamma(k + 1.0)).exp()
            })
            .sum()
    }

    #[test]
    fn endpoints() {
        assert_eq!(tree_function(0.0).unwrap(), 0.0);
        assert_eq!(tree_function((-1.0f64).exp()).unwrap(), 1.0);
        assert_eq!(tree_function(CRITICAL).unwrap(), 1.0);
    }

    #[test]
    fn domain() {
        assert!(tree_function(-1e-9).is_err());
        assert!(tree_function(0.37).is_err());
        assert!(tree_function(f64::NAN).is_err());
    }

    #[test]
    fn matches_series_away_from_branch_point() {
        for i in 1..30 {
            let c = 0.01 * i as f64;
            let t = tree_function(c).unwrap();
            assert!((t - series(c)).abs() < 1e-12, "c={c}");
        }
    }

    #[test]
    fn residual_on_both_branches_of_the_solver() {
        for c in [
            1e-300, 1e-12, 0.1, 0.2499, 0.25, 0.3, 0.36, 0.3678, 0.36787944,
        ] {
            let t = tree_function(c).unwrap();
            assert!((t - c * t.exp()).abs() < 1e-13, "c={c}");
            assert!((0.0..=1.0).contains(&t));
        }
    }

    #[test]
    fn lambert_relation() {
        // W(-c) = -T(c) satisfies W e^W = -c.
        for c in [0.05, 0.2, 0.35] {
            let w = -tree_function(c).unwrap();
            assert!((w * w.exp() + c).abs() < 1e-15);
        }
    }
}
