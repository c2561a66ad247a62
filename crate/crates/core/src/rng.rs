//! Deterministic, portable random numbers for synthetic fixtures.
//!
//! Fixtures must be reproducible bit-for-bit from a seed, across platforms
//! and across reimplementations in other languages. That rules out library
//! generators whose streams are unspecified or version-dependent, so this
//! module pins two textbook algorithms:
//!
//! * uniforms: SplitMix64 (Steele/Lea/Flood), 64-bit state, one add and two
//!   xor-multiply mixes per output;
//! * normals: Box-Muller, cosine branch, consuming exactly two uniform
//!   draws per normal (no caching of the sine branch, no ziggurat).

/// SplitMix64 stream. `next_u64` advances the state by the golden-ratio
/// increment and mixes; all other draws are defined in terms of it.
#[derive(Debug, Clone)]
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

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Standard normal via Box-Muller (cosine branch).
    ///
    /// u1 is shifted into (0, 1] so the log is finite; consumes exactly two
    /// uniforms so parallel reimplementations stay in lockstep.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Sub-seed for stream `index`: the (index+1)-th output of a fresh
    /// stream over the master seed. Lets per-channel generators run in
    /// parallel while staying reproducible.
    pub fn sub_seed(master: u64, index: usize) -> u64 {
        let mut s = SplitMix64::new(master);
        let mut seed = s.next_u64();
        for _ in 0..index {
            seed = s.next_u64();
        }
        seed
    }
}
