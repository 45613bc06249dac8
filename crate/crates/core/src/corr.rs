//! Circular rank correlations `R_fg = Σ_{i<j} f((r_j − r_i)/N)·g((s_j − s_i)/N)`
//! for odd, period-1 kernels. The writhe is `R_αβ` with `r_i = i`,
//! `s_i = π(i)`.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{require_odd, Error, Result};
use crate::moments::Rational;
use crate::perm::Permutation;

/// Paired circular ranks, both bijections onto `{0, …, N−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPairs {
    r: Vec<usize>,
    s: Vec<usize>,
}

fn check_ranks(v: &[usize], which: &str) -> Result<()> {
    let mut seen = vec![false; v.len()];
    for &x in v {
        if x >= v.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotBijection(format!(
                "{which} ranks are not a bijection onto 0..{}",
                v.len()
            )));
        }
    }
    Ok(())
}

impl RankPairs {
    pub fn new(r: Vec<usize>, s: Vec<usize>) -> Result<Self> {
        if r.is_empty() || r.len() != s.len() {
            return Err(Error::InvalidParameter(format!(
                "rank sequences must be nonempty and of equal length ({} vs {})",
                r.len(),
                s.len()
            )));
        }
        check_ranks(&r, "first")?;
        check_ranks(&s, "second")?;
        Ok(Self { r, s })
    }

    /// `r_i = i`, `s_i = π(i)`.
    pub fn from_permutation(p: &Permutation) -> Self {
        Self {
            r: (0..p.size()).collect(),
            s: p.as_slice().to_vec(),
        }
    }

    pub fn size(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Shifts every `r_i` by `a` and every `s_i` by `b` modulo `N`.
    pub fn rotated(&self, a: usize, b: usize) -> Self {
        let n = self.size();
        Self {
            r: self.r.iter().map(|&x| (x + a) % n).collect(),
            s: self.s.iter().map(|&x| (x + b) % n).collect(),
        }
    }

    /// `s_i ↦ −s_i mod N`.
    pub fn negated_second(&self) -> Self {
        let n = self.size();
        Self {
            r: self.r.clone(),
            s: self.s.iter().map(|&x| (n - x) % n).collect(),
        }
    }
}

/// Circular ranks of angles (radians) reduced into `[0, 2π)`, together with
/// the number of values that tie with an earlier one. Ties are ranked in
/// input order.
pub fn circular_ranks(angles: &[f64]) -> Result<(Vec<usize>, usize)> {
    if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
        return Err(Error::Parse(format!("non-finite angle {bad}")));
    }
    let reduced: Vec<f64> = angles.iter().map(|a| a.rem_euclid(TAU)).collect();
    let mut order: Vec<usize> = (0..angles.len()).collect();
    order.sort_by(|&i, &j| reduced[i].total_cmp(&reduced[j]));
    let mut ranks = vec![0; angles.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank;
    }
    let ties = order
        .windows(2)
        .filter(|w| reduced[w[0]] == reduced[w[1]])
        .count();
    Ok((ranks, ties))
}

/// Rank pairs from paired angles, with tie counts for each coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleRanks {
    pub pairs: RankPairs,
    pub ties_first: usize,
    pub ties_second: usize,
}

pub fn ranks_from_angles(theta: &[f64], phi: &[f64]) -> Result<AngleRanks> {
    let (r, ties_first) = circular_ranks(theta)?;
    let (s, ties_second) = circular_ranks(phi)?;
    Ok(AngleRanks {
        pairs: RankPairs::new(r, s)?,
        ties_first,
        ties_second,
    })
}

/// An odd function of period 1, given on `(−½, ½)`.
#[derive(Clone, Copy)]
pub struct PeriodicKernel {
    name: &'static str,
    eval: fn(f64) -> f64,
    /// Value at `t ≡ ½`, or `None` where the kernel jumps.
    at_half: Option<f64>,
}

impl std::fmt::Debug for PeriodicKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicKernel")
            .field("name", &self.name)
            .finish()
    }
}

impl PeriodicKernel {
    pub fn new(name: &'static str, eval: fn(f64) -> f64, at_half: Option<f64>) -> Self {
        Self {
            name,
            eval,
            at_half,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let u = t - t.round();
        if u.abs() == 0.5 {
            return self
                .at_half
                .ok_or_else(|| Error::KernelDiscontinuity(format!("{t} ({} kernel)", self.name)));
        }
        Ok((self.eval)(u))
    }

    fn at_fraction(&self, d: i64, n: usize) -> Result<f64> {
        if 2 * d.unsigned_abs() as usize == n {
            return self
                .at_half
                .ok_or_else(|| Error::KernelDiscontinuity(format!("{d}/{n} ({} kernel)", self.name)));
        }
        Ok((self.eval)(d as f64 / n as f64))
    }
}

fn sign(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `α(t) = sign t`.
pub fn kernel_alpha() -> PeriodicKernel {
    PeriodicKernel::new("alpha", sign, None)
}

/// `β(t) = sign(t)(1 − 2|t|)`.
pub fn kernel_beta() -> PeriodicKernel {
    PeriodicKernel::new("beta", |t| sign(t) * (1.0 - 2.0 * t.abs()), Some(0.0))
}

/// `γ(t) = sin 2πt`.
pub fn kernel_gamma() -> PeriodicKernel {
    PeriodicKernel::new("gamma", |t| (2.0 * PI * t).sin(), Some(0.0))
}

/// Symmetric representative of `b − a` modulo `n`, in `(−n/2, n/2]`.
fn diff(a: usize, b: usize, n: usize) -> i64 {
    let d = (b + n - a) % n;
    if 2 * d > n {
        d as i64 - n as i64
    } else {
        d as i64
    }
}

/// `R_fg` by the double sum, in floating point.
pub fn r_fg(data: &RankPairs, f: &PeriodicKernel, g: &PeriodicKernel) -> Result<f64> {
    let n = data.size();
    let (r, s) = (data.r(), data.s());
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += f.at_fraction(diff(r[i], r[j], n), n)?
                * g.at_fraction(diff(s[i], s[j], n), n)?;
        }
    }
    Ok(total)
}

/// `R_αβ` in exact arithmetic: `Σ sign(Δr)·(sign(Δs)·N − 2Δs) / N`.
pub fn r_alpha_beta_exact(data: &RankPairs) -> Result<Rational> {
    let n = data.size();
    let (r, s) = (data.r(), data.s());
    let mut numerator: i128 = 0;
    for i in 0..n {
        for j in i + 1..n {
            let dr = diff(r[i], r[j], n);
            if 2 * dr.unsigned_abs() as usize == n {
                return Err(Error::KernelDiscontinuity(format!("{dr}/{n} (alpha kernel)")));
            }
            let ds = diff(s[i], s[j], n);
            let scaled_beta = if 2 * ds.unsigned_abs() as usize == n {
                0
            } else {
                ds.signum() * n as i64 - 2 * ds
            };
            numerator += (dr.signum() * scaled_beta) as i128;
        }
    }
    Ok(Rational::new(BigInt::from(numerator), BigInt::from(n)))
}

/// Fisher–Lee `Δ = R_ββ`.
pub fn fisher_lee_delta(data: &RankPairs) -> Result<f64> {
    r_fg(data, &kernel_beta(), &kernel_beta())
}

/// Mardia `Π = R_γγ`.
pub fn mardia_pi(data: &RankPairs) -> Result<f64> {
    r_fg(data, &kernel_gamma(), &kernel_gamma())
}

/// `Σ_{x<y} α_n(y − x)·β_n(π(y) − π(x))` with `α_n(d) = ±1` for
/// `d ∈ ±{1, …, n}` and `β_n(d) = ±1 ∓ 2|d|/(2n+1)`, accumulated exactly.
pub fn writhe_avg_form(p: &Permutation) -> Result<i64> {
    let size = p.size();
    require_odd(size)?;
    let total = r_alpha_beta_exact(&RankPairs::from_permutation(p))?;
    assert!(
        total.is_integer(),
        "averaged form produced the non-integer {total}"
    );
    Ok(total.to_integer().to_i64().expect("writhe fits in i64"))
}
