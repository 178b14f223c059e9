//! Fixed inputs shared by the benches.

use dyckx::SubshiftSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The full Dyck shift on `n` bracket pairs.
pub fn dyck(n: usize) -> SubshiftSpec {
    SubshiftSpec::dyck(n)
}

/// A reproducible batch of random specs.
pub fn random_specs(count: usize, classes: usize, max_copies: usize, seed: u64) -> Vec<SubshiftSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| SubshiftSpec::random(&mut rng, classes, max_copies)).collect()
}
