//! Bernoulli, Euler (zigzag) and Eulerian numbers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// `B_m` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`, `B_0 = 1`.
///
/// Odd `m ≥ 3` is rejected (those vanish). `m = 1` gives `−1/2`, the value
/// this recurrence produces.
pub fn bernoulli(m: usize) -> Result<Rational> {
    if m >= 3 && m % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "Bernoulli numbers are only served for even m (got {m})"
        )));
    }
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let next = cache.len();
        // Σ_{k<next} C(next+1, k) B_k + (next+1) B_next = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (k, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(next + 1 - k) / BigInt::from(k + 1);
        }
        cache.push(-acc / Rational::from_integer(BigInt::from(next + 1)));
    }
    Ok(cache[m].clone())
}

/// Number of alternating permutations of `S_m` (`1, 1, 1, 2, 5, 16, 61, …`),
/// computed with the Seidel boustrophedon triangle.
pub fn euler_zigzag(m: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::zero());
        for v in row.iter().rev() {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    row.last().unwrap().clone()
}

/// Number of permutations of `S_m` with exactly `d` descents.
pub fn eulerian(m: usize, d: usize) -> Result<BigInt> {
    if m == 0 || d >= m {
        return Err(Error::InvalidParameter(format!(
            "Eulerian number needs 0 <= d < m, got m = {m}, d = {d}"
        )));
    }
    let mut row = vec![BigInt::one()];
    for size in 2..=m {
        let mut next = vec![BigInt::zero(); size];
        for (j, slot) in next.iter_mut().enumerate() {
            if j < row.len() {
                *slot += BigInt::from(j + 1) * &row[j];
            }
            if j >= 1 {
                *slot += BigInt::from(size - j) * &row[j - 1];
            }
        }
        row = next;
    }
    Ok(row[d].clone())
}
