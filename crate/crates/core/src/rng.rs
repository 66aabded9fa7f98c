//! Seeded randomness. Every randomized routine draws from ChaCha8 seeded
//! with the caller's 64-bit seed on a routine-specific stream, so results
//! are reproducible across runs and platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

pub(crate) mod stream {
    pub const GREEDY: u64 = 1;
    pub const ROUNDING: u64 = 2;
    pub const SA1: u64 = 3;
    pub const SA2: u64 = 4;
    pub const GEN_BINOMIAL: u64 = 10;
    pub const GEN_REGULAR: u64 = 11;
    pub const EXPANDER: u64 = 12;
    pub const EXPANSION_SAMPLE: u64 = 13;
}

pub fn seeded(seed: u64, stream: u64) -> Rng64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
