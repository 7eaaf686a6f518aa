//! Reproducible random streams and the exponential fading gain.
//!
//! Every stream is a ChaCha20 generator keyed by a 64-bit seed and selected
//! by a 64-bit stream id (ChaCha's native stream counter). Equal
//! `(seed, stream_id)` pairs yield identical sequences on every platform.
//! Child streams derive a fresh key from the parent's identity so that
//! nested work items (per replication, per purpose, per sample) never share
//! draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::Exp1;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Independent sub-stream `index`, determined only by this stream's
    /// `(seed, stream_id)` and `index`, not by how far it has advanced.
    pub fn child(&self, index: u64) -> RngStream {
        let key = splitmix64(self.seed ^ splitmix64(self.stream_id.wrapping_add(0x5851_f42d_4c95_7f2d)));
        RngStream::new(key, index)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn exp1(&mut self) -> f64 {
        self.rng.sample(Exp1)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Small-scale fading as a linear power gain, `h >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FadingGain(f64);

impl FadingGain {
    /// No fading: `h = 1`.
    pub const UNITY: FadingGain = FadingGain(1.0);

    /// Returns `None` for negative or non-finite gains.
    pub fn new(h: f64) -> Option<Self> {
        (h >= 0.0 && h.is_finite()).then_some(Self(h))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Draws `h ~ Exp(1)`: Rayleigh amplitude fading expressed as a unit-mean
/// power gain.
pub fn sample_fading(stream: &mut RngStream) -> FadingGain {
    FadingGain(stream.exp1())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_streams_agree() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 3);
        for _ in 0..1000 {
            assert_eq!(sample_fading(&mut a).value().to_bits(), sample_fading(&mut b).value().to_bits());
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 4);
        let mut c = RngStream::new(8, 3);
        let xa: Vec<f64> = (0..8).map(|_| a.uniform()).collect();
        let xb: Vec<f64> = (0..8).map(|_| b.uniform()).collect();
        let xc: Vec<f64> = (0..8).map(|_| c.uniform()).collect();
        assert_ne!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[test]
    fn child_ignores_parent_position() {
        let parent = RngStream::new(11, 2);
        let mut advanced = parent.clone();
        advanced.uniform();
        let mut c1 = parent.child(5);
        let mut c2 = advanced.child(5);
        assert_eq!(c1.uniform(), c2.uniform());
        assert_ne!(parent.child(5).uniform(), parent.child(6).uniform());
    }

    #[test]
    fn fading_is_nonnegative_with_unit_mean() {
        let mut s = RngStream::new(1, 0);
        let n = 200_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let h = sample_fading(&mut s).value();
            assert!(h >= 0.0);
            sum += h;
        }
        assert!((sum / n as f64 - 1.0).abs() < 0.01);
    }

    #[test]
    fn fading_gain_rejects_negative() {
        assert!(FadingGain::new(-0.1).is_none());
        assert!(FadingGain::new(f64::NAN).is_none());
        assert_eq!(FadingGain::new(0.0).unwrap().value(), 0.0);
    }
}
