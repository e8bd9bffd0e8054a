//! Counter-based deterministic random numbers.
//!
//! Every variate is a pure function of (seed, stream, trial, index), so
//! simulation output is independent of scheduling and parallelism. The
//! generator is a SplitMix64-style keyed counter: the key is derived by
//! avalanche-mixing the identifiers, and the value at counter `i` is the
//! finalizer applied to `key + (i+1) * GOLDEN`. Not cryptographic.

use std::f64::consts::PI;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stateless generator keyed by (seed, stream, trial).
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64, trial: u64) -> Self {
        let mut key = mix64(seed ^ GOLDEN);
        key = mix64(key ^ stream.wrapping_mul(0xA24B_AED4_963E_E407));
        key = mix64(key ^ trial.wrapping_mul(0x9FB2_1C65_1E98_DF25));
        CounterRng { key }
    }

    #[inline]
    pub fn u64_at(&self, index: u64) -> u64 {
        mix64(self.key.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform in (0, 1], from the top 53 bits.
    #[inline]
    pub fn uniform_at(&self, index: u64) -> f64 {
        ((self.u64_at(index) >> 11) + 1) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Box-Muller pair of independent standard normals at `pair_index`.
    #[inline]
    pub fn normal_pair_at(&self, pair_index: u64) -> (f64, f64) {
        let u1 = self.uniform_at(2 * pair_index);
        let u2 = self.uniform_at(2 * pair_index + 1);
        let r = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (2.0 * PI * u2).sin_cos();
        (r * cos, r * sin)
    }

    /// Single standard normal at a flat index (half of a Box-Muller pair).
    #[inline]
    pub fn normal_at(&self, index: u64) -> f64 {
        let pair = self.normal_pair_at(index / 2);
        if index % 2 == 0 {
            pair.0
        } else {
            pair.1
        }
    }

    /// Fill a slice with standard normals starting at pair index 0.
    pub fn fill_normals(&self, out: &mut [f64]) {
        let mut i = 0;
        while i + 1 < out.len() {
            let (a, b) = self.normal_pair_at((i / 2) as u64);
            out[i] = a;
            out[i + 1] = b;
            i += 2;
        }
        if i < out.len() {
            out[i] = self.normal_pair_at((i / 2) as u64).0;
        }
    }

    /// Uniform index in [0, bound). Modulo bias is < bound / 2^64 and
    /// irrelevant for patch placement.
    #[inline]
    pub fn index_at(&self, index: u64, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.u64_at(index) % bound
    }
}
