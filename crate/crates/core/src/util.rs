use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ceiling of a real quantity that is mathematically an exact integer more
/// often than floating point lets on (e.g. `9 / 0.3`). Values within a
/// relative 1e-12 of an integer snap to it.
pub(crate) fn ceil_tolerant(x: f64) -> f64 {
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-12 * x.abs().max(1.0) {
        rounded
    } else {
        x.ceil()
    }
}

/// Independent generator for a `(seed, stream)` pair. ChaCha's stream id
/// gives counter-based derivation: any party holding the master seed can
/// rebuild the same generator without coordination.
pub(crate) fn derived_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
