//! Seeded deterministic random number generation.
//!
//! The random baselines use splitmix64, a small published generator with a
//! 64-bit state. Hand-rolling it keeps histograms bit-identical across
//! platforms and dependency upgrades.

/// splitmix64 generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for one sample of an experiment, derived
    /// deterministically from (seed, sample index).
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut boot = SplitMix64::new(seed ^ index.wrapping_mul(0xD2B7_4407_B1CE_6E93));
        let s = boot.next_u64();
        SplitMix64::new(s)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in 0..n, consuming exactly one `next_u64` call.
    /// The modulo bias is below n / 2^64, invisible at the n <= a-few-dozen
    /// sizes used here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn state(&self) -> u64 {
        self.state
    }
}
