//! Monte Carlo support: reproducible per-sample generators and running
//! mean / standard error accumulation.
//!
//! Sample `i` of a run seeded with `s` always sees the same generator,
//! independent of how samples are batched or partitioned across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default sample count for Monte Carlo estimators.
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Generator for one sample, derived from `(seed, index)` only.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(seed) ^ splitmix(index.wrapping_mul(0xd1342543de82ef95)))
}

/// A Monte Carlo estimate with its sampling setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn ci99(&self) -> (f64, f64) {
        (self.mean - Z99 * self.stderr, self.mean + Z99 * self.stderr)
    }

    /// Shift and scale: the estimate of `|mean - center| / scale`.
    pub fn deviation_from(&self, center: f64, scale: f64) -> Estimate {
        Estimate {
            mean: (self.mean - center).abs() / scale,
            stderr: self.stderr / scale,
            ..*self
        }
    }
}

/// Accumulates samples and produces the mean and its standard error.
#[derive(Debug, Default)]
pub struct Accumulator {
    count: u64,
    sum: f64,
    sum_sq: f64,
}

impl Accumulator {
    pub fn push(&mut self, value: f64) {
        self.count += 1;
        self.sum += value;
        self.sum_sq += value * value;
    }

    pub fn finish(&self, seed: u64) -> Estimate {
        assert!(self.count >= 2, "need at least two samples");
        let m = self.count as f64;
        let mean = self.sum / m;
        let var = (self.sum_sq - self.sum * self.sum / m).max(0.0) / (m - 1.0);
        Estimate {
            mean,
            stderr: (var / m).sqrt(),
            samples: self.count,
            seed,
        }
    }
}
