//! The run's single pseudo-random stream.
//!
//! SplitMix64 (Vigna, 2015). Chosen because the entire generator is four
//! integer operations with published reference outputs, so the same seed
//! yields the same stream on every platform — the determinism contract the
//! engine is built on. Each run owns exactly one stream; the engine
//! consumes it in a fixed order (documented in [`crate::engine`]).

/// SplitMix64 generator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One Bernoulli trial. `p <= 0` never succeeds, `p >= 1` always does;
    /// a draw is consumed either way so the stream layout does not depend
    /// on likelihood values.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform draw in `[-half, half)`.
    pub fn symmetric(&mut self, half: f64) -> f64 {
        (self.next_f64() * 2.0 - 1.0) * half
    }
}
