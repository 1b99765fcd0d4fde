//! Counter-keyed random streams.
//!
//! Every consumer asks for a stream keyed by `(seed, a, b)`, so the values it
//! sees do not depend on how work is scheduled across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream(seed: u64, a: u64, b: u64) -> Stream {
    let key = splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b.rotate_left(17));
    Stream(ChaCha8Rng::seed_from_u64(key))
}

pub struct Stream(ChaCha8Rng);

impl Stream {
    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        let v = lo + (hi - lo) * self.uniform();
        if v >= hi {
            lo
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut s1 = stream(7, 1, 2);
        let mut s2 = stream(7, 1, 2);
        let mut s3 = stream(7, 2, 1);
        let x1 = s1.uniform();
        assert_eq!(x1, s2.uniform());
        assert_ne!(x1, s3.uniform());
        for _ in 0..1000 {
            let u = s1.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
