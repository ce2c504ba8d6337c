use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Generator behind every seeded draw. Recorded in provenance so a
/// collection can be reproduced by another build.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng/rand_chacha-0.3/seed_from_u64";

pub type DivRng = ChaCha8Rng;

/// Seed for the portable generator. Identical seeds and identical call
/// sequences give identical draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> DivRng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Per-trial seed `base ⊕ k`, independent of scheduling order.
    pub fn derive(self, k: u64) -> Self {
        RngSeed(self.0 ^ k)
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}
