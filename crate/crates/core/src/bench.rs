//! Timing harness for the quadratic and `O(N log N)` writhe.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{require_odd, Result};
use crate::fast::writhe_fast;
use crate::limit::SampleStream;
use crate::mc::{random_permutation, Algorithm};
use crate::stats::linear_fit;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub size: usize,
    pub algorithm: Algorithm,
    /// Median over the repetitions.
    pub seconds: f64,
}

/// Median wall time of one writhe evaluation on a random permutation of
/// `size`, over `reps` repetitions on fresh permutations.
pub fn time_writhe(size: usize, algorithm: Algorithm, reps: usize, seed: u64) -> Result<Timing> {
    require_odd(size)?;
    let mut rng = SampleStream::new(seed, size as u64);
    let mut times: Vec<Duration> = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let p = random_permutation(size, &mut rng);
        let start = Instant::now();
        let w = match algorithm {
            Algorithm::Fast => writhe_fast(&p)?,
            Algorithm::Naive => p.writhe_naive()?,
        };
        times.push(start.elapsed());
        std::hint::black_box(w);
    }
    times.sort();
    Ok(Timing {
        size,
        algorithm,
        seconds: times[times.len() / 2].as_secs_f64(),
    })
}

/// Slope of `log t` against `log N`.
pub fn fit_exponent(timings: &[Timing]) -> f64 {
    let x: Vec<f64> = timings.iter().map(|t| (t.size as f64).ln()).collect();
    let y: Vec<f64> = timings.iter().map(|t| t.seconds.max(1e-12).ln()).collect();
    linear_fit(&x, &y).0
}

/// Sizes `2^k + 1` for `k` in `lo..=hi`.
pub fn power_ladder(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| (1usize << k) + 1).collect()
}
