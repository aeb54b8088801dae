//! Deterministic random streams.
//!
//! Every randomized solver draws from ChaCha8 ([`rand_chacha::ChaCha8Rng`]).
//! The key is derived from the master seed with `seed_from_u64`, and each run
//! gets its own 64-bit stream id, so run `r` sees the same numbers no matter
//! which other runs execute or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Bits reserved for the run index inside a stream id.
const RUN_BITS: u32 = 40;

/// Generator for stream `stream` under `master_seed`.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Stream id of run `run` at restart level `level` (the subset size tried by
/// the exact solver, 0 for single-level solvers).
pub fn stream_id(level: u64, run: u64) -> u64 {
    debug_assert!(run < 1 << RUN_BITS);
    (level << RUN_BITS) | run
}
