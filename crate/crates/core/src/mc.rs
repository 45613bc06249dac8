//! Monte Carlo over uniform random permutations.
//!
//! A sample budget is cut into a fixed number of chunks; chunk `i` draws from
//! `stream.substream(i)`. Results are merged in chunk order, so they do not
//! depend on how many threads ran the chunks.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fast::writhe_fast;
use crate::limit::{LimitTable, SampleStream};
use crate::moments::{mu_k, to_f64};
use crate::perm::Permutation;
use crate::stats::sample_moment;

/// Uniform element of `S_size` by Fisher–Yates. Index draws use rejection
/// sampling inside `random_range`, so there is no modulo bias.
pub fn random_permutation<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..size).collect();
    for i in (1..size).rev() {
        let j = rng.random_range(0..=i);
        map.swap(i, j);
    }
    Permutation::from_vec_unchecked(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Fast,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    /// Number of independent chunks the budget is split into.
    pub chunks: usize,
    pub algorithm: Algorithm,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            chunks: 64,
            algorithm: Algorithm::Fast,
        }
    }
}

/// Fixed-edge histogram with explicit under- and overflow counts.
///
/// Bins are `[e_i, e_{i+1})`, except the last, which also holds its right
/// edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
    underflow: u64,
    overflow: u64,
    total: u64,
}

impl Histogram {
    pub fn with_edges(bin_edges: Vec<f64>) -> Result<Self> {
        if bin_edges.len() < 2 || bin_edges.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter(
                "a histogram needs at least two finite edges".into(),
            ));
        }
        if bin_edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "bin edges must be strictly increasing".into(),
            ));
        }
        let bins = bin_edges.len() - 1;
        Ok(Self {
            bin_edges,
            counts: vec![0; bins],
            underflow: 0,
            overflow: 0,
            total: 0,
        })
    }

    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || !(hi > lo) {
            return Err(Error::InvalidParameter(format!(
                "cannot split [{lo}, {hi}] into {bins} bins"
            )));
        }
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
        edges.push(hi);
        Self::with_edges(edges)
    }

    /// `[−4, 4]` in 161 bins.
    pub fn default_range() -> Self {
        Self::uniform(-4.0, 4.0, 161).expect("valid default grid")
    }

    /// Same edges, no counts.
    pub fn empty_like(&self) -> Self {
        Self {
            bin_edges: self.bin_edges.clone(),
            counts: vec![0; self.counts.len()],
            underflow: 0,
            overflow: 0,
            total: 0,
        }
    }

    pub fn record(&mut self, x: f64) {
        self.total += 1;
        let last = *self.bin_edges.last().expect("two edges");
        if x.is_nan() || x > last {
            self.overflow += 1;
            return;
        }
        let idx = self.bin_edges.partition_point(|&e| e <= x);
        if idx == 0 {
            self.underflow += 1;
        } else {
            let last_bin = self.counts.len() - 1;
            self.counts[(idx - 1).min(last_bin)] += 1;
        }
    }

    /// Adds `other`'s counts; edges must agree exactly.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.bin_edges != other.bin_edges {
            return Err(Error::InvalidParameter(
                "cannot merge histograms with different edges".into(),
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        self.total += other.total;
        Ok(())
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn underflow(&self) -> u64 {
        self.underflow
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Count divided by `total · width`.
    pub fn density(&self, bin: usize) -> f64 {
        let width = self.bin_edges[bin + 1] - self.bin_edges[bin];
        self.counts[bin] as f64 / (self.total as f64 * width)
    }

    /// Empirical `P[X < e]` at every edge `e`.
    pub fn cdf_at_edges(&self) -> Vec<f64> {
        let total = self.total as f64;
        let mut acc = self.underflow;
        let mut out = Vec::with_capacity(self.bin_edges.len());
        out.push(acc as f64 / total);
        for &c in &self.counts {
            acc += c;
            out.push(acc as f64 / total);
        }
        out
    }

    /// `max_i |c_i − c_{mirror(i)}| / total`; meaningful for grids symmetric
    /// about zero.
    pub fn mirror_distance(&self) -> f64 {
        let n = self.counts.len();
        let worst = (0..n)
            .map(|i| self.counts[i].abs_diff(self.counts[n - 1 - i]))
            .max()
            .unwrap_or(0)
            .max(self.underflow.abs_diff(self.overflow));
        worst as f64 / self.total as f64
    }
}

fn chunk_sizes(num_samples: usize, chunks: usize) -> Vec<usize> {
    let chunks = chunks.max(1);
    let (base, rem) = (num_samples / chunks, num_samples % chunks);
    (0..chunks).map(|i| base + usize::from(i < rem)).collect()
}

fn writhe_of(p: &Permutation, algorithm: Algorithm) -> Result<i64> {
    match algorithm {
        Algorithm::Fast => writhe_fast(p),
        Algorithm::Naive => p.writhe_naive(),
    }
}

/// Un-normalised writhes of `num_samples` uniform permutations of size
/// `2n + 1`, in chunk order.
pub fn writhe_samples(
    n: usize,
    num_samples: usize,
    stream: &SampleStream,
    cfg: &McConfig,
) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let size = 2 * n + 1;
    let chunks: Vec<Result<Vec<i64>>> = chunk_sizes(num_samples, cfg.chunks)
        .into_par_iter()
        .enumerate()
        .map(|(i, count)| {
            let mut rng = stream.substream(i as u64);
            (0..count)
                .map(|_| writhe_of(&random_permutation(size, &mut rng), cfg.algorithm))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(num_samples);
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Normalised writhes `w/n`.
pub fn normalized_samples(
    n: usize,
    num_samples: usize,
    stream: &SampleStream,
    cfg: &McConfig,
) -> Result<Vec<f64>> {
    Ok(writhe_samples(n, num_samples, stream, cfg)?
        .into_iter()
        .map(|w| w as f64 / n as f64)
        .collect())
}

/// Histogram of `w/n` on the edges of `bins` (its counts are ignored).
pub fn empirical_distribution(
    n: usize,
    num_samples: usize,
    stream: &SampleStream,
    bins: &Histogram,
    cfg: &McConfig,
) -> Result<Histogram> {
    let mut h = bins.empty_like();
    for x in normalized_samples(n, num_samples, stream, cfg)? {
        h.record(x);
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub k: u32,
    pub value: f64,
    pub std_error: f64,
}

/// Raw moments of `w/n` for `k = 1..=k_max` with standard errors.
pub fn moments_of(samples: &[f64], k_max: u32) -> Vec<MomentEstimate> {
    (1..=k_max)
        .map(|k| {
            let (value, std_error) = sample_moment(samples, k);
            MomentEstimate {
                k,
                value,
                std_error,
            }
        })
        .collect()
}

pub fn empirical_moments(
    n: usize,
    num_samples: usize,
    stream: &SampleStream,
    k_max: u32,
    cfg: &McConfig,
) -> Result<Vec<MomentEstimate>> {
    if k_max == 0 || k_max % 2 == 1 || k_max > 8 {
        return Err(Error::InvalidParameter(format!(
            "k_max must be even and at most 8, got {k_max}"
        )));
    }
    Ok(moments_of(
        &normalized_samples(n, num_samples, stream, cfg)?,
        k_max,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentGap {
    pub k: u32,
    pub empirical: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitComparison {
    /// `max |F_emp − F_W|` over the bin edges.
    pub ks: f64,
    /// Bin-midpoint moments against the limiting ones (binning bias included).
    pub moment_gaps: Vec<MomentGap>,
}

/// Distance between a histogram of normalised writhes and the limit law.
pub fn compare_to_limit(h: &Histogram) -> LimitComparison {
    let table = LimitTable::standard();
    let ks = h
        .bin_edges()
        .iter()
        .zip(h.cdf_at_edges())
        .map(|(&e, f)| (f - table.cdf(e)).abs())
        .fold(0.0, f64::max);
    let inside: u64 = h.counts().iter().sum();
    let moment_gaps = [2u32, 4]
        .iter()
        .map(|&k| {
            let edges = h.bin_edges();
            let empirical = h
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &c)| c as f64 * (0.5 * (edges[i] + edges[i + 1])).powi(k as i32))
                .sum::<f64>()
                / inside.max(1) as f64;
            MomentGap {
                k,
                empirical,
                limit: to_f64(&mu_k(k as usize).expect("small even order")),
            }
        })
        .collect();
    LimitComparison { ks, moment_gaps }
}

/// KS distance of raw normalised samples to the limit law.
pub fn ks_to_limit(samples: &[f64]) -> f64 {
    let table = LimitTable::standard();
    crate::stats::ks_one_sample(samples, |x| table.cdf(x))
}
