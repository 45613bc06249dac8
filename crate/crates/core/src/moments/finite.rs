//! Exact finite-`n` writhe moments: closed forms for `k = 2, 4` and the
//! full-enumeration oracle for small `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};
use crate::perm::all_permutations;

const MAX_ENUMERATION_N: usize = 3;

/// Coefficients (lowest degree first) of `E[w^k]` as a polynomial in `n`,
/// for `π` uniform on `S_{2n+1}`:
///
/// ```text
/// E[w²] = (2n² + n) / 3
/// E[w⁴] = (76n⁴ + 44n³ − 49n² − 26n) / 45
/// ```
pub fn exact_moment_poly(k: usize) -> Result<Vec<Rational>> {
    match k {
        2 => Ok(vec![rat(0, 1), rat(1, 3), rat(2, 3)]),
        4 => Ok(vec![
            rat(0, 1),
            rat(-26, 45),
            rat(-49, 45),
            rat(44, 45),
            rat(76, 45),
        ]),
        _ => Err(Error::InvalidParameter(format!(
            "closed-form moment polynomials exist for k = 2 and 4 only, got {k}"
        ))),
    }
}

pub fn eval_poly(coeffs: &[Rational], n: u64) -> Rational {
    let x = Rational::from_integer(BigInt::from(n));
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &x + c)
}

/// Exact distribution of the writhe over all of `S_{2n+1}`: value → count.
pub fn writhe_distribution(n: usize) -> Result<BTreeMap<i64, u64>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            what: "n for full enumeration",
            value: n,
            limit: MAX_ENUMERATION_N,
        });
    }
    let mut counts = BTreeMap::new();
    for p in all_permutations(2 * n + 1) {
        *counts.entry(p.writhe_naive()?).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `E[w^k]` over uniform `π ∈ S_{2n+1}` by full enumeration.
pub fn moment_enumeration(n: usize, k: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let dist = writhe_distribution(n)?;
    let mut sum = BigInt::zero();
    let mut total = BigInt::zero();
    for (&w, &c) in &dist {
        sum += BigInt::from(w).pow(k) * BigInt::from(c);
        total += BigInt::from(c);
    }
    if total.is_zero() {
        total = BigInt::one();
    }
    Ok(Rational::new(sum, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let p2 = exact_moment_poly(2).unwrap();
        assert_eq!(eval_poly(&p2, 1), rat(1, 1));
        assert_eq!(eval_poly(&p2, 2), rat(10, 3));
        assert_eq!(eval_poly(&p2, 3), rat(7, 1));
        let p4 = exact_moment_poly(4).unwrap();
        assert_eq!(eval_poly(&p4, 1), rat(1, 1));
        assert_eq!(p4[4], crate::moments::mu_k(4).unwrap());
        assert_eq!(p2[2], crate::moments::mu_k(2).unwrap());
        assert!(exact_moment_poly(6).is_err());
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        for k in [2usize, 4] {
            let poly = exact_moment_poly(k).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    moment_enumeration(n, k as u32).unwrap(),
                    eval_poly(&poly, n as u64),
                    "k = {k}, n = {n}"
                );
            }
        }
        assert_eq!(moment_enumeration(1, 2).unwrap(), rat(1, 1));
        assert_eq!(moment_enumeration(2, 2).unwrap(), rat(10, 3));
        assert_eq!(
            moment_enumeration(3, 4).unwrap(),
            rat(76 * 81 + 44 * 27 - 49 * 9 - 26 * 3, 45)
        );
    }

    #[test]
    fn odd_moments_vanish() {
        for n in 1..=3 {
            for k in [1, 3, 5] {
                assert!(moment_enumeration(n, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(moment_enumeration(4, 2), Err(Error::TooLarge { .. })));
        assert!(moment_enumeration(0, 2).is_err());
        let d = writhe_distribution(1).unwrap();
        assert_eq!(d.get(&1), Some(&3));
        assert_eq!(d.get(&-1), Some(&3));
    }
}
