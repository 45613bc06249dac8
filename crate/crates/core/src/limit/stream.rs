use rand::distr::Open01;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reproducible random source identified by `(seed, stream_id)`.
///
/// Streams sharing a seed but differing in `stream_id` are disjoint ChaCha
/// streams under the same key, hence independent for all practical purposes.
#[derive(Debug, Clone)]
pub struct SampleStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream number `index`, independent of this one and of its other
    /// children. Used to split a budget into chunks.
    pub fn substream(&self, index: u64) -> Self {
        let mut z = self
            .stream_id
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03));
        // splitmix64 finaliser
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Self::new(self.seed, z)
    }

    /// Uniform draw from the open interval `(0, 1)`.
    pub fn open01(&mut self) -> f64 {
        self.rng.sample(Open01)
    }
}

impl RngCore for SampleStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let draw = |s: &mut SampleStream| (0..8).map(|_| s.next_u64()).collect::<Vec<_>>();
        let a = draw(&mut SampleStream::new(7, 0));
        assert_eq!(a, draw(&mut SampleStream::new(7, 0)));
        assert_ne!(a, draw(&mut SampleStream::new(7, 1)));
        assert_ne!(a, draw(&mut SampleStream::new(8, 0)));
        let parent = SampleStream::new(7, 0);
        assert_ne!(
            draw(&mut parent.substream(0)),
            draw(&mut parent.substream(1))
        );
        assert_eq!(
            draw(&mut parent.substream(3)),
            draw(&mut parent.clone().substream(3))
        );
    }

    #[test]
    fn open01_stays_inside() {
        let mut s = SampleStream::new(1, 2);
        for _ in 0..10_000 {
            let u = s.open01();
            assert!(u > 0.0 && u < 1.0);
        }
    }
}
