//! Deterministic seed derivation for embarrassingly parallel generation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives an independent per-index seed from a master seed using the
/// splitmix64 finalizer over `master + index * golden_gamma`. Pure and
/// platform-independent, so index ranges can be generated concurrently while
/// keeping output order fixed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A stream cipher RNG seeded from `derive_seed`; byte-stable across
/// platforms and releases.
pub fn rng_for(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
    }

    #[test]
    fn distinct_indices_distinct_seeds() {
        let s0 = derive_seed(42, 0);
        let s1 = derive_seed(42, 1);
        assert_ne!(s0, s1);
    }

    #[test]
    fn pinned_vectors() {
        // Frozen outputs of the splitmix64 mix; must never change.
        assert_eq!(derive_seed(0, 0), 0);
        assert_eq!(derive_seed(0, 1), 0xE220_A839_7B1D_CDAF);
        assert_eq!(derive_seed(0xDEAD_BEEF, 0), 0x4E06_2702_EC92_9EEA);
        assert_eq!(derive_seed(42, 7), 0x37E9_671C_4537_6D5D);
    }

    #[test]
    fn rng_streams_are_reproducible() {
        use rand::Rng;
        let mut r1 = rng_for(9, 3);
        let mut r2 = rng_for(9, 3);
        let v1: Vec<u64> = (0..4).map(|_| r1.gen()).collect();
        let v2: Vec<u64> = (0..4).map(|_| r2.gen()).collect();
        assert_eq!(v1, v2);
    }
}
