//! Limiting moments `μ_k` of the normalized writhe `w/n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numbers::bernoulli;
use super::Rational;
use crate::error::{Error, Result};

/// Largest moment order served by [`mu_k`] and [`mu_k_recurrence`].
pub const MAX_MOMENT_ORDER: usize = 20;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `λ_m = 8^m (2^m − 1) B_m² / (2 (m!)²)` for even `m`, zero for odd `m`.
pub fn lambda_m(m: usize) -> Rational {
    if m == 0 || m % 2 == 1 {
        return Rational::zero();
    }
    let b = bernoulli(m).expect("even index");
    let num = (BigInt::one() << (3 * m)) * ((BigInt::one() << m) - 1u32);
    let f = factorial(m);
    Rational::new(num, BigInt::from(2) * &f * &f) * &b * &b
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_MOMENT_ORDER {
        return Err(Error::TooLarge {
            what: "moment order",
            value: k,
            limit: MAX_MOMENT_ORDER,
        });
    }
    Ok(())
}

/// `μ_k = Σ_{σ ∈ S_k} Π_{γ ∈ cycles(σ)} λ_{|γ|}`, summed by cycle type.
///
/// Only cycle types with all parts even contribute. A type with part
/// multiplicities `c_j` is carried by `k! / Π_j (j^{c_j} c_j!)` permutations.
/// Odd `k` gives zero.
pub fn mu_k(k: usize) -> Result<Rational> {
    check_order(k)?;
    if k % 2 == 1 {
        return Ok(Rational::zero());
    }
    let kfact = factorial(k);
    let mut total = Rational::zero();
    let mut parts = Vec::new();
    even_partitions(k, k, &mut parts, &mut |parts| {
        let mut denom = BigInt::one();
        let mut weight = Rational::one();
        let mut i = 0;
        while i < parts.len() {
            let part = parts[i];
            let mut mult = 0;
            while i < parts.len() && parts[i] == part {
                mult += 1;
                i += 1;
            }
            denom *= BigInt::from(part).pow(mult as u32) * factorial(mult);
            let lam = lambda_m(part);
            for _ in 0..mult {
                weight *= &lam;
            }
        }
        total += Rational::new(kfact.clone(), denom) * weight;
    });
    Ok(total)
}

/// Partitions of `rest` into even parts, non-increasing, each at most `max`.
fn even_partitions(rest: usize, max: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if rest == 0 {
        f(acc);
        return;
    }
    let mut part = max.min(rest) & !1;
    while part >= 2 {
        acc.push(part);
        even_partitions(rest - part, part, acc, f);
        acc.pop();
        part -= 2;
    }
}

/// `μ_k` from `M(z) = exp(Σ λ_m z^m / m)`: differentiating gives
/// `μ_k = Σ_{m=2, even}^{k} (k−1)!/(k−m)! · λ_m · μ_{k−m}`, `μ_0 = 1`.
pub fn mu_k_recurrence(k: usize) -> Result<Rational> {
    check_order(k)?;
    let mut mu = vec![Rational::one()];
    for j in 1..=k {
        let mut acc = Rational::zero();
        for m in (2..=j).step_by(2) {
            let coeff = Rational::new(factorial(j - 1), factorial(j - m));
            acc += coeff * lambda_m(m) * &mu[j - m];
        }
        mu.push(acc);
    }
    Ok(mu[k].clone())
}
