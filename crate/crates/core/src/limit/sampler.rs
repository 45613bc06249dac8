//! Series samplers for the limit law.
//!
//! `W ~ (4/π²) Σ_{n≥1} A_n/n` with `A_n` iid of density `(1/π) sech x`, and
//! equivalently `W ~ (4/π²) Σ_n Σ_{m odd} L_{mn}/(mn)` with `L` standard
//! Laplace.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use super::special::inverse_square_tail;
use super::stream::SampleStream;
use crate::error::{Error, Result};

/// What to do with the terms beyond the truncation index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailMode {
    Drop,
    /// Add a centred normal with the exact variance of the omitted terms.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    terms: usize,
    tail: TailMode,
}

impl TruncationPolicy {
    pub fn new(terms: usize, tail: TailMode) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidParameter(
                "truncation index must be at least 1".into(),
            ));
        }
        Ok(Self { terms, tail })
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn tail(&self) -> TailMode {
        self.tail
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            terms: 1000,
            tail: TailMode::Gaussian,
        }
    }
}

const SCALE: f64 = 4.0 / (PI * PI);

/// CDF of the sech law, `(2/π)·atan(eˣ)`.
pub fn sech_cdf(x: f64) -> f64 {
    2.0 / PI * x.exp().atan()
}

/// Inverse of [`sech_cdf`]: `log tan(πu/2)`.
pub fn sech_quantile(u: f64) -> f64 {
    (0.5 * PI * u).tan().ln()
}

/// One draw from the density `(1/π) sech x` by inversion.
pub fn sample_sech(stream: &mut SampleStream) -> f64 {
    sech_quantile(stream.open01())
}

/// Variance of `(4/π²) Σ_{n>K} A_n/n`, i.e. `(4/π²) Σ_{n>K} n⁻²`.
pub fn sech_tail_variance(terms: usize) -> f64 {
    SCALE * inverse_square_tail(terms)
}

/// Variance of the Laplace double series restricted to `n ≤ K`, odd `m ≤ K`.
pub fn laplace_truncated_variance(terms: usize) -> f64 {
    let rows: f64 = (1..=terms).map(|n| 1.0 / (n as f64 * n as f64)).sum();
    let cols: f64 = (1..=terms)
        .step_by(2)
        .map(|m| 1.0 / (m as f64 * m as f64))
        .sum();
    // Var(L) = 2
    SCALE * SCALE * 2.0 * rows * cols
}

/// One draw of `W` from the sech series.
pub fn sample_w(stream: &mut SampleStream, policy: &TruncationPolicy) -> f64 {
    let head: f64 = (1..=policy.terms)
        .map(|n| sample_sech(stream) / n as f64)
        .sum();
    let mut w = SCALE * head;
    if policy.tail == TailMode::Gaussian {
        let z: f64 = stream.sample(StandardNormal);
        w += sech_tail_variance(policy.terms).sqrt() * z;
    }
    w
}

/// One draw of `W` from the Laplace double series, `L = E₁ − E₂`.
///
/// The Gaussian tail uses the exact leftover variance `2/3 − Var(truncated)`.
pub fn sample_w_laplace(stream: &mut SampleStream, policy: &TruncationPolicy) -> f64 {
    let k = policy.terms;
    let mut head = 0.0;
    for n in 1..=k {
        let mut row = 0.0;
        for m in (1..=k).step_by(2) {
            let e1: f64 = stream.sample(Exp1);
            let e2: f64 = stream.sample(Exp1);
            row += (e1 - e2) / m as f64;
        }
        head += row / n as f64;
    }
    let mut w = SCALE * head;
    if policy.tail == TailMode::Gaussian {
        let rest = (2.0 / 3.0 - laplace_truncated_variance(k)).max(0.0);
        let z: f64 = stream.sample(StandardNormal);
        w += rest.sqrt() * z;
    }
    w
}
