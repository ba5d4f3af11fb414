use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// Identity of the generator behind [`SeededStream`], recorded in run
/// metadata.
pub const GENERATOR_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.9); key = \
     SeedableRng::seed_from_u64(seed) (PCG32 key expansion); stream = stream_index; \
     uniform f64 = (next_u64 >> 11) * 2^-53";

/// A reproducible random stream, identified by a 64-bit seed and a stream
/// index.
///
/// The seed fixes the ChaCha20 key and the index selects one of its 2⁶⁴
/// independent streams, so distinct indices never share keystream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl SeededStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self { seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn same_stream_same_sequence() {
        let a: Vec<u64> = {
            let mut r = SeededStream::new(42, 3).rng();
            (0..8).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = SeededStream::new(42, 3).rng();
            (0..8).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        let mut other = SeededStream::new(42, 4).rng();
        assert_ne!(a[0], other.next_u64());
    }

    #[test]
    fn first_output_is_pinned() {
        const PINNED: u64 = 449_479_075_714_955_186;
        const PINNED_42_7: u64 = 1_168_684_908_879_833_857;
        // Guards the portability contract: changing the key expansion or the
        // stream layout changes every recorded run.
        let mut r = SeededStream::new(0, 0).rng();
        assert_eq!(r.next_u64(), PINNED);
        let mut r = SeededStream::new(42, 7).rng();
        assert_eq!(r.next_u64(), PINNED_42_7);
    }
}
