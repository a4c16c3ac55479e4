//! Seeded random streams. One seed fans out into independent ChaCha streams
//! so that solver randomness never depends on how workloads were generated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SOLVER_STREAM: u64 = 0;
pub const WORKLOAD_STREAM: u64 = 1;
pub const INSTANCE_STREAM: u64 = 2;
pub const PROBE_STREAM: u64 = 3;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
