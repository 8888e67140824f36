//! SplitMix64: the single documented randomness source for every seeded
//! experiment, so golden files can be reproduced by any implementation that
//! follows the same three-line generator.
//!
//! State update: `state = state + 0x9E3779B97F4A7C15` (wrapping), output is
//! `mix64` of the new state. `next_f64` takes the top 53 bits over 2^53.
//! Independent sub-streams for task `(a, b)` under a master `seed` use
//! `stream_seed(seed, a, b) = mix64(seed ^ mix64(a ^ mix64(b)))`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The 64-bit finalizer from SplitMix64.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-task seed derivation: tasks indexed by `(a, b)` get
/// independent streams under one master seed.
pub fn stream_seed(seed: u64, a: u64, b: u64) -> u64 {
    mix64(seed ^ mix64(a ^ mix64(b)))
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)` by plain reduction. The modulo bias is below
    /// 2^-32 for every bound used here, and plain reduction keeps the stream
    /// trivial to reimplement.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}
