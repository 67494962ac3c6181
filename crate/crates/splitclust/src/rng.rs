//! Deterministic 64-bit pseudo-random number generation.
//!
//! Every randomized procedure in this crate draws from [`SplitMix64`], so a
//! run is reproducible from a single seed on any platform and with any worker
//! count. Stage-local generators come from [`SplitMix64::substream`], which
//! maps a `(seed, stream id)` pair to an independent stream; the splitter
//! uses one stream per refinement level and the synthetic generator one
//! stream per dataset index.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The `splitmix64` generator: state advances by the 64-bit golden-ratio
/// constant, output is a finalizing avalanche mix of the state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream `id` for a base `seed`: the returned generator is
    /// seeded with one output of a generator seeded by `seed ^ id·φ64`.
    pub fn substream(seed: u64, id: u64) -> Self {
        let mut base = Self::new(seed ^ id.wrapping_mul(GOLDEN));
        let mixed = base.next_u64();
        Self::new(mixed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n` via modulo reduction (`n` must be nonzero; the bias
    /// is below 2⁻⁵³ for any `n` used in this crate).
    pub fn next_below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform sample of `count` distinct indices from `0..len`, in draw
    /// order (the first `count` steps of a Fisher-Yates shuffle). Returns all
    /// of `0..len` when `count >= len`.
    pub fn sample_without_replacement(&mut self, len: usize, count: usize) -> Vec<usize> {
        let count = count.min(len);
        let mut idx: Vec<usize> = (0..len).collect();
        for i in 0..count {
            let j = i + self.next_below(len - i);
            idx.swap(i, j);
        }
        idx.truncate(count);
        idx
    }

    /// One pair of independent standard-normal draws via the Box-Muller
    /// transform on `u1 ∈ (0, 1]`, `u2 ∈ [0, 1)`.
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        (radius * angle.cos(), radius * angle.sin())
    }
}
