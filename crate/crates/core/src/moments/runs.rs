//! Runs of `+` in parity vectors and the lattice-count identity
//! `#{0 ≤ t_1 < ⋯ < t_v ≤ 2n : (−1)^{t_i} = ε_i} = C(n + z(ε), v)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A nonempty vector of signs `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityVector(Vec<i8>);

impl ParityVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty parity vector".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidParameter(format!(
                "parity entries must be +1 or -1, got {bad}"
            )));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All `2^v` vectors of length `v`.
    pub fn all(v: usize) -> impl Iterator<Item = ParityVector> {
        (0u64..(1 << v)).map(move |mask| {
            ParityVector(
                (0..v)
                    .map(|i| if mask >> i & 1 == 0 { 1 } else { -1 })
                    .collect(),
            )
        })
    }
}

impl FromStr for ParityVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::Parse(format!("invalid parity symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.0 {
            f.write_str(if e > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Number of maximal runs of `+`.
pub fn runs_z(eps: &ParityVector) -> usize {
    let e = eps.entries();
    e.iter()
        .enumerate()
        .filter(|&(i, &x)| x > 0 && (i == 0 || e[i - 1] < 0))
        .count()
}

/// `((v+1) + ε_1 − ε_1ε_2 − ⋯ − ε_{v−1}ε_v + ε_v) / 4`.
pub fn runs_z_closed(eps: &ParityVector) -> usize {
    let e: Vec<i64> = eps.entries().iter().map(|&x| x as i64).collect();
    let v = e.len() as i64;
    let adjacent: i64 = e.windows(2).map(|w| w[0] * w[1]).sum();
    let numerator = (v + 1) + e[0] - adjacent + e[e.len() - 1];
    debug_assert_eq!(numerator % 4, 0);
    (numerator / 4) as usize
}

/// `C(n + z(ε), v)`.
pub fn parity_count(n: u64, eps: &ParityVector) -> BigUint {
    let top = n + runs_z(eps) as u64;
    num_integer::binomial(BigUint::from(top), BigUint::from(eps.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> ParityVector {
        s.parse().unwrap()
    }

    fn lattice_count(n: u64, eps: &ParityVector) -> u64 {
        fn rec(next: u64, hi: u64, eps: &[i8]) -> u64 {
            match eps.split_first() {
                None => 1,
                Some((&e, rest)) => (next..=hi)
                    .filter(|t| (t % 2 == 0) == (e > 0))
                    .map(|t| rec(t + 1, hi, rest))
                    .sum(),
            }
        }
        rec(0, 2 * n, eps.entries())
    }

    #[test]
    fn run_examples() {
        assert_eq!(runs_z(&pv("+++--")), 1);
        assert_eq!(runs_z(&pv("+-+")), 2);
        assert_eq!(runs_z(&pv("---")), 0);
        assert!("".parse::<ParityVector>().is_err());
        assert!("+x".parse::<ParityVector>().is_err());
        assert!(ParityVector::new(vec![1, 0]).is_err());
        assert_eq!(pv("+-+").to_string(), "+-+");
    }

    #[test]
    fn closed_form_matches_runs() {
        for v in 1..=12 {
            for eps in ParityVector::all(v) {
                assert_eq!(runs_z(&eps), runs_z_closed(&eps), "{eps}");
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(parity_count(1, &pv("+")), BigUint::from(2u32));
        assert_eq!(parity_count(2, &pv("+-")), BigUint::from(3u32));
        assert_eq!(parity_count(1, &pv("-")), BigUint::from(1u32));
        assert_eq!(lattice_count(2, &pv("+-")), 3);
    }

    #[test]
    fn binomial_identity_by_lattice_enumeration() {
        for n in 0..=6u64 {
            for v in 1..=5 {
                for eps in ParityVector::all(v) {
                    assert_eq!(
                        parity_count(n, &eps),
                        BigUint::from(lattice_count(n, &eps)),
                        "n = {n}, eps = {eps}"
                    );
                }
            }
        }
    }
}
