//! Deterministic seedable randomness.
//!
//! The stream is backed by ChaCha12 (a counter-based stream cipher with a
//! period far beyond 2^64) and exposes uniform [0,1) and standard-normal
//! draws. Normals come from Box-Muller applied to the uniform stream, with
//! the spare value cached, so a stream is a pure function of (seed, call
//! sequence). Parallel tasks fork child streams by reseeding: the child
//! seed mixes the parent seed with a task tag.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::normal::TWO_PI;

/// Seed for a deterministic random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

/// Deterministic random stream; single-owner, never shared across threads.
#[derive(Debug, Clone)]
pub struct Prng {
    chacha: ChaCha12Rng,
    spare_normal: Option<f64>,
}

impl Prng {
    pub fn new(seed: RngSeed) -> Self {
        Self {
            chacha: ChaCha12Rng::seed_from_u64(seed.0),
            spare_normal: None,
        }
    }

    /// Child stream for a parallel task. Children with distinct tags are
    /// independent of each other and of the parent's future draws.
    pub fn fork(seed: RngSeed, tag: u64) -> Self {
        Self::new(RngSeed(seed.0 ^ splitmix64(tag)))
    }

    /// Uniform draw on [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.chacha.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw on {0, 1, ..., n-1} by rejection (n >= 1).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n >= 1);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.chacha.next_u64();
            if v < zone {
                return (v % n) as usize;
            }
        }
    }

    /// Standard normal draw (Box-Muller on the uniform stream).
    pub fn std_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        // 1-u1 lies in (0,1], so the log is finite
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = TWO_PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Fisher-Yates draw of `m` distinct indices from 0..n.
    pub fn sample_indices(&mut self, n: usize, m: usize) -> Vec<usize> {
        assert!(m <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = i + self.below(n - i);
            pool.swap(i, j);
        }
        pool.truncate(m);
        pool
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// SplitMix64 finalizer; decorrelates fork tags from the parent seed.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::std_normal_quantile;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Prng::new(RngSeed(42));
        let mut b = Prng::new(RngSeed(42));
        for _ in 0..1000 {
            assert_eq!(a.uniform(), b.uniform());
        }
    }

    #[test]
    fn different_seeds_diverge_quickly() {
        let mut a = Prng::new(RngSeed(1));
        let mut b = Prng::new(RngSeed(2));
        let diverged = (0..10).any(|_| a.uniform() != b.uniform());
        assert!(diverged);
    }

    #[test]
    fn forked_streams_differ_from_parent_and_each_other() {
        let mut parent = Prng::new(RngSeed(7));
        let mut f0 = Prng::fork(RngSeed(7), 0);
        let mut f1 = Prng::fork(RngSeed(7), 1);
        let p: Vec<f64> = (0..10).map(|_| parent.uniform()).collect();
        let a: Vec<f64> = (0..10).map(|_| f0.uniform()).collect();
        let b: Vec<f64> = (0..10).map(|_| f1.uniform()).collect();
        assert_ne!(p, a);
        assert_ne!(a, b);
    }

    #[test]
    fn normal_mean_within_clt_bound() {
        let mut rng = Prng::new(RngSeed(2024));
        let n = 1_000_000;
        let mean: f64 = (0..n).map(|_| rng.std_normal()).sum::<f64>() / n as f64;
        // 3.3 sigma / sqrt(n) ~ 0.0033; spec bound 0.005
        assert!(mean.abs() <= 0.005, "mean={mean}");
    }

    #[test]
    fn normal_chi_square_goodness_of_fit() {
        // 20 equiprobable bins, 1e6 draws, alpha = 0.001
        let mut rng = Prng::new(RngSeed(99));
        let edges: Vec<f64> = (1..20).map(|i| std_normal_quantile(i as f64 / 20.0)).collect();
        let mut counts = [0u64; 20];
        let n = 1_000_000usize;
        for _ in 0..n {
            let z = rng.std_normal();
            let bin = edges.partition_point(|&e| e < z);
            counts[bin] += 1;
        }
        let expected = n as f64 / 20.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // chi2 quantile at 0.999 with 19 degrees of freedom
        assert!(chi2 < 43.82019596451753, "chi2={chi2}");
    }

    #[test]
    fn sample_indices_are_distinct_and_in_range() {
        let mut rng = Prng::new(RngSeed(5));
        for _ in 0..100 {
            let idx = rng.sample_indices(30, 10);
            assert_eq!(idx.len(), 10);
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 10);
            assert!(idx.iter().all(|&i| i < 30));
        }
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = Prng::new(RngSeed(0));
        for _ in 0..10_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
