//! Permutations of `{0, …, N−1}` and the quadratic-time reference statistics.
//!
//! Every statistic here is evaluated straight from its defining double sum.
//! These are the oracles the fast algorithm in [`crate::fast`] is checked
//! against, so they favour obviousness over speed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_odd, Error, Result};

/// A bijection on `{0, …, N−1}`, stored as its image list.
///
/// Values are immutable: every operation returns a new permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

/// Which of the three inversion-type sums to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionVariant {
    /// `Σ_{y<x} sign(σ(x) − σ(y))`
    Plain,
    /// `Σ_{y<x} (−1)^y sign(σ(x) − σ(y))`
    Alternating,
    /// `Σ_{y<x} (−1)^{x+y} sign(σ(x) − σ(y))`
    Bialternating,
}

/// Side on which a rotation is composed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `ρ^k ∘ p`: shifts the values.
    Left,
    /// `p ∘ ρ^k`: shifts the positions.
    Right,
}

#[inline]
pub(crate) fn sign(a: usize, b: usize) -> i64 {
    // sign(b - a); a == b cannot happen for distinct positions of a bijection
    debug_assert_ne!(a, b, "sign(0) on a bijection");
    if b > a {
        1
    } else {
        -1
    }
}

#[inline]
fn parity_sign(x: usize) -> i64 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Permutation {
    /// Validates `map` as a bijection on `{0, …, map.len()−1}`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::NotBijection("empty image list".into()));
        }
        let mut seen = vec![false; n];
        for (i, &v) in map.iter().enumerate() {
            if v >= n {
                return Err(Error::NotBijection(format!(
                    "value {v} at position {i} is out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotBijection(format!(
                    "value {v} occurs more than once"
                )));
            }
        }
        Ok(Self { map })
    }

    /// Caller guarantees `map` is a bijection.
    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(Self::new(map.clone()).is_ok());
        Self { map }
    }

    pub fn identity(size: usize) -> Self {
        Self {
            map: (0..size).collect(),
        }
    }

    /// `x ↦ N − 1 − x`.
    pub fn reversal(size: usize) -> Self {
        Self {
            map: (0..size).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::InvalidParameter(format!(
                "cannot compose permutations of sizes {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Self {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// `x ↦ (N − 1) − p(x)`, which negates the writhe.
    pub fn complement(&self) -> Self {
        let n = self.size();
        Self {
            map: self.map.iter().map(|&v| n - 1 - v).collect(),
        }
    }

    /// Writhe by definition:
    /// `w(p) = Σ_{i ∈ Z_N} Σ_{j=1}^{n} sign(p(i+j) − p(i))` with `N = 2n+1`.
    pub fn writhe_naive(&self) -> Result<i64> {
        let size = self.size();
        require_odd(size)?;
        if size > i32::MAX as usize {
            return Err(Error::TooLarge {
                what: "permutation size",
                value: size,
                limit: i32::MAX as usize,
            });
        }
        let half = size / 2;
        // Σ sign = 2·#{p(i+j) > p(i)} − N·n; the window i+1..=i+n is split at
        // the wrap so the inner loops are plain slice scans
        // i32 keeps the comparison loop vectorisable on baseline x86-64
        let map: Vec<i32> = self.map.iter().map(|&v| v as i32).collect();
        let above = |window: &[i32], base: i32| window.iter().map(|&v| (v > base) as u32).sum::<u32>() as usize;
        let mut greater = 0usize;
        for (i, &base) in map.iter().enumerate() {
            let end = i + half;
            greater += if end < size {
                above(&map[i + 1..=end], base)
            } else {
                above(&map[i + 1..], base) + above(&map[..end + 1 - size], base)
            };
        }
        Ok(2 * greater as i64 - (size * half) as i64)
    }

    pub fn inversion_stat(&self, variant: InversionVariant) -> i64 {
        let mut total = 0i64;
        for x in 1..self.size() {
            for y in 0..x {
                let s = sign(self.map[y], self.map[x]);
                total += match variant {
                    InversionVariant::Plain => s,
                    InversionVariant::Alternating => parity_sign(y) * s,
                    InversionVariant::Bialternating => parity_sign(x + y) * s,
                };
            }
        }
        total
    }

    /// Number of classical inversions `#{y < x : p(y) > p(x)}`.
    pub fn inversions(&self) -> u64 {
        let mut count = 0;
        for x in 1..self.size() {
            for y in 0..x {
                if self.map[y] > self.map[x] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `ρ^k ∘ p` (left) or `p ∘ ρ^k` (right), where `ρ(x) = x + 1 mod N`.
    pub fn rotate(&self, k: i64, side: Side) -> Self {
        let n = self.size();
        let shift = k.rem_euclid(n as i64) as usize;
        let map = match side {
            Side::Left => self.map.iter().map(|&v| (v + shift) % n).collect(),
            Side::Right => (0..n).map(|x| self.map[(x + shift) % n]).collect(),
        };
        Self { map }
    }

    /// `p ∘ (x, x+1)` with indices taken mod `N`, so `x = N−1` swaps the
    /// last and first positions.
    pub fn adjacent_circular_transpose(&self, x: usize) -> Result<Self> {
        let n = self.size();
        if x >= n {
            return Err(Error::InvalidParameter(format!(
                "position {x} out of range 0..{n}"
            )));
        }
        let mut map = self.map.clone();
        map.swap(x, (x + 1) % n);
        Ok(Self { map })
    }

    /// Rotates positions so that the largest value sits last, then drops it.
    ///
    /// Preserves the bi-alternating inversion number, which for odd sizes is
    /// invariant under `σ ↦ σ ∘ ρ`.
    pub fn reduce_odd_to_even(&self) -> Result<Self> {
        let size = self.size();
        require_odd(size)?;
        if size < 3 {
            return Err(Error::InvalidParameter(
                "a single point cannot be reduced to an even permutation".into(),
            ));
        }
        let top = size - 1;
        let pos = self.map.iter().position(|&v| v == top).expect("bijection");
        // (σ ∘ ρ^k)(top) = σ(top + k) = top  ⇔  k = pos − top (mod N)
        let k = pos as i64 - top as i64;
        let mut rotated = self.rotate(k, Side::Right).map;
        debug_assert_eq!(rotated[top], top);
        rotated.pop();
        Ok(Self { map: rotated })
    }

    /// `π(x) = x` for `sign = +1`, `π(x) = 2n − x` for `sign = −1`; the two
    /// permutations of `S_{2n+1}` with writhe `±n²`.
    pub fn extremal(n: usize, sign: i8) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let size = 2 * n + 1;
        match sign {
            1 => Ok(Self::identity(size)),
            -1 => Ok(Self::reversal(size)),
            _ => Err(Error::InvalidParameter(format!(
                "sign must be +1 or -1, got {sign}"
            ))),
        }
    }
}

/// `τ(x) = 2x mod N` on odd `N`.
pub fn halve_map(size: usize) -> Result<Permutation> {
    require_odd(size)?;
    Ok(Permutation {
        map: (0..size).map(|x| (2 * x) % size).collect(),
    })
}

/// The inverse of [`halve_map`]: `x ↦ ((N+1)/2)·x mod N`.
pub fn halve_map_inverse(size: usize) -> Result<Permutation> {
    require_odd(size)?;
    let half = (size + 1) / 2;
    Ok(Permutation {
        map: (0..size).map(|x| (half * x) % size).collect(),
    })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses an image list such as `"0 4 1 3 2 6 5"` or `"0,4,1,3,2,6,5"`.
///
/// A run of single digits without separators (`"0413265"`) is also accepted
/// for sizes up to 10.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let tokens: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let map = if tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].len() <= 10 {
            tokens[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("invalid digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("invalid entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(map)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(map: Vec<usize>) -> Result<Self> {
        Self::new(map)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

/// Every permutation of `{0, …, n−1}` in lexicographic order.
///
/// Intended for exhaustive checks; `n!` grows quickly.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_lexicographic(&mut next) {
            current = Some(next);
        }
        Some(Permutation { map: out })
    })
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn writhe_reference_values() {
        assert_eq!(Permutation::identity(5).writhe_naive().unwrap(), 4);
        assert_eq!(Permutation::reversal(5).writhe_naive().unwrap(), -4);
        assert_eq!(p("0413265").writhe_naive().unwrap(), -1);
        assert_eq!(Permutation::identity(1).writhe_naive().unwrap(), 0);
    }

    #[test]
    fn writhe_rejects_even_size() {
        let err = Permutation::identity(4).writhe_naive().unwrap_err();
        assert!(matches!(err, Error::SizeParity { size: 4, .. }));
    }

    #[test]
    fn inversion_variants() {
        use InversionVariant::*;
        assert_eq!(p("0246153").inversion_stat(Bialternating), -1);
        assert_eq!(p("01").inversion_stat(Bialternating), -1);
        assert_eq!(p("10").inversion_stat(Bialternating), 1);
        for n in 1..8 {
            let c = (n * (n - 1) / 2) as i64;
            assert_eq!(Permutation::identity(n).inversions(), 0);
            assert_eq!(Permutation::identity(n).inversion_stat(Plain), c);
        }
        // every non-inverted pair contributes +1: ι = C(N,2) − 2·inv
        for q in all_permutations(5) {
            assert_eq!(q.inversion_stat(Plain), 10 - 2 * q.inversions() as i64);
        }
        assert_eq!(Permutation::reversal(6).inversion_stat(Plain), -15);
    }

    #[test]
    fn halve_map_values() {
        assert_eq!(halve_map(7).unwrap().as_slice(), &[0, 2, 4, 6, 1, 3, 5]);
        assert_eq!(halve_map(1).unwrap(), Permutation::identity(1));
        assert!(halve_map(6).is_err());
        let sigma = p("0246153");
        let tau = halve_map(7).unwrap();
        let composed = sigma.compose(&tau).unwrap();
        assert_eq!(composed, p("0413265"));
        assert_eq!(composed.writhe_naive().unwrap(), -1);
        for n in [1, 3, 5, 9, 11] {
            let t = halve_map(n).unwrap();
            let ti = halve_map_inverse(n).unwrap();
            assert_eq!(t.compose(&ti).unwrap(), Permutation::identity(n));
        }
    }

    #[test]
    fn reduce_examples() {
        use InversionVariant::Bialternating;
        let r = p("012").reduce_odd_to_even().unwrap();
        assert_eq!(r, p("01"));
        assert_eq!(r.inversion_stat(Bialternating), -1);

        let fixed = p("10234");
        assert_eq!(fixed.reduce_odd_to_even().unwrap(), p("1023"));

        let s = p("0246153");
        let r = s.reduce_odd_to_even().unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.inversion_stat(Bialternating), -1);

        assert!(Permutation::identity(1).reduce_odd_to_even().is_err());
        assert!(Permutation::identity(4).reduce_odd_to_even().is_err());
    }

    #[test]
    fn rotations() {
        let id = Permutation::identity(7);
        for k in -8..9 {
            let expect: Vec<usize> = (0..7).map(|x| (x as i64 + k).rem_euclid(7) as usize).collect();
            assert_eq!(id.rotate(k, Side::Left).as_slice(), &expect[..]);
            assert_eq!(id.rotate(k, Side::Right).as_slice(), &expect[..]);
        }
        let q = p("0413265");
        assert_eq!(q.rotate(7, Side::Left), q);
        assert_eq!(q.rotate(7, Side::Right), q);
    }

    #[test]
    fn transpositions() {
        let id = Permutation::identity(3);
        assert_eq!(id.adjacent_circular_transpose(0).unwrap().as_slice(), &[1, 0, 2]);
        assert_eq!(id.adjacent_circular_transpose(2).unwrap().as_slice(), &[2, 1, 0]);
        let q = p("0413265");
        for x in 0..7 {
            let t = q.adjacent_circular_transpose(x).unwrap();
            assert_eq!(t.adjacent_circular_transpose(x).unwrap(), q);
        }
        assert!(q.adjacent_circular_transpose(7).is_err());
    }

    #[test]
    fn extremal_values() {
        assert_eq!(Permutation::extremal(3, 1).unwrap().writhe_naive().unwrap(), 9);
        assert_eq!(Permutation::extremal(3, -1).unwrap().writhe_naive().unwrap(), -9);
        assert!(Permutation::extremal(0, 1).is_err());
        assert!(Permutation::extremal(2, 0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(p("0 4 1 3 2 6 5"), p("0,4,1,3,2,6,5"));
        assert_eq!(p("0 4 1 3 2 6 5"), p("0413265"));
        assert_eq!(p(" 2, 0 ,1 "), Permutation::new(vec![2, 0, 1]).unwrap());
        assert!(matches!("0 1 1".parse::<Permutation>(), Err(Error::NotBijection(_))));
        assert!(matches!("0 3 1".parse::<Permutation>(), Err(Error::NotBijection(_))));
        assert!(matches!("0 x 1".parse::<Permutation>(), Err(Error::Parse(_))));
        assert!("".parse::<Permutation>().is_err());
        assert_eq!(p("0 4 1 3 2 6 5").to_string(), "0 4 1 3 2 6 5");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(all_permutations(5).count(), 120);
        let mut v: Vec<_> = all_permutations(4).collect();
        v.dedup();
        assert_eq!(v.len(), 24);
    }
}
