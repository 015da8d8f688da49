//! Counter-based randomness.
//!
//! Edge weights and per-trial seeds are pure functions of a 64-bit seed and
//! an index, so instances can be regenerated piecemeal and trials can run in
//! any order on any number of threads.

use rand::rngs::SmallRng;
use rand::SeedableRng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash of `(seed, a, b)`.
#[inline]
pub fn hash3(seed: u64, a: u64, b: u64) -> u64 {
    let key = mix64(a.wrapping_mul(GOLDEN) ^ b.rotate_left(32).wrapping_add(GOLDEN));
    mix64(seed ^ key)
}

/// Map 64 random bits to the open unit interval `(0, 1)`.
#[inline]
pub fn unit_open(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// An Exp(1) draw by inverse transform, determined by `(seed, a, b)`.
#[inline]
pub fn exp1(seed: u64, a: u64, b: u64) -> f64 {
    -unit_open(hash3(seed, a, b)).ln()
}

/// Seed for trial `index` of an experiment started from `base`.
#[inline]
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(base ^ mix64(index.wrapping_add(GOLDEN)))
}

/// A fast sequential generator for per-trial streams (walk experiments).
pub fn trial_rng(base: u64, index: u64) -> SmallRng {
    SmallRng::seed_from_u64(derive_seed(base, index))
}
