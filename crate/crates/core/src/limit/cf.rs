//! Characteristic function `φ_W(t) = Π_{n≥1} sech(2t/(πn))`.

use std::f64::consts::{FRAC_2_PI, LN_2};
use std::sync::OnceLock;

use super::special::{hurwitz_zeta, inverse_square_tail};
use crate::moments::{bernoulli, to_f64};

/// `log cosh x` without cancellation at either end.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    if a < 1.0 {
        // cosh x − 1 = 2 sinh²(x/2)
        let s = (0.5 * a).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        a + (-2.0 * a).exp().ln_1p() - LN_2
    }
}

/// `Π_{n=1}^{K} sech(2t/(πn))` times `exp(−(2t²/π²) Σ_{n>K} n⁻²)`, the
/// second-order correction for the omitted factors.
pub fn cf_w(t: f64, k: usize) -> f64 {
    let a = FRAC_2_PI * t;
    let head: f64 = (1..=k).map(|n| ln_cosh(a / n as f64)).sum();
    let tail = 0.5 * a * a * inverse_square_tail(k);
    (-head - tail).exp()
}

/// Terms handled by the direct product in [`cf_w_limit`].
const DIRECT_TERMS: usize = 64;
/// Power-series terms of `log cosh` used for the remaining factors.
const SERIES_TERMS: usize = 40;

/// `(c_j, ζ(2j, DIRECT_TERMS + 1))` with `log cosh x = Σ_{j≥1} c_j x^{2j}`,
/// `c_j = 2^{2j}(2^{2j} − 1) B_{2j} / (2j·(2j)!)`.
fn series_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut factorial = 1.0f64;
        (1..=SERIES_TERMS)
            .map(|j| {
                let m = 2 * j;
                factorial *= ((m - 1) * m) as f64;
                let b = to_f64(&bernoulli(m).expect("even index"));
                let p = 2f64.powi(m as i32);
                let c = p * (p - 1.0) * b / (m as f64 * factorial);
                (c, hurwitz_zeta(m as f64, (DIRECT_TERMS + 1) as f64))
            })
            .collect()
    })
}

/// `φ_W(t)` with no truncation: the first factors directly, the rest through
/// `Σ_{n>N₀} log cosh(a/n) = Σ_j c_j a^{2j} ζ(2j, N₀+1)`.
pub fn cf_w_limit(t: f64) -> f64 {
    let a = FRAC_2_PI * t.abs();
    let x = a / (DIRECT_TERMS + 1) as f64;
    if x > 1.0 {
        // |t| > ~100: φ is below 1e-60 here; a long direct product is plenty
        let k = (4.0 * a).ceil() as usize;
        return cf_w(t, k);
    }
    let head: f64 = (1..=DIRECT_TERMS).map(|n| ln_cosh(a / n as f64)).sum();
    let a2 = a * a;
    let mut power = 1.0;
    let mut tail = 0.0;
    for &(c, zeta) in series_table() {
        power *= a2;
        let term = c * power * zeta;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
    }
    (-head - tail).exp()
}

/// `k`-th derivative of `φ_W` at 0 (`k` even) by central differences with
/// Richardson extrapolation over `levels` halvings of `h`.
pub fn cf_derivative_at_zero(k: usize, h: f64, levels: usize) -> f64 {
    assert!(k % 2 == 0 && k > 0 && levels > 0);
    let central = |h: f64| {
        // δ^k φ(0) / h^k; binomial weights, symmetric nodes (k/2 − i)·h
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * cf_w_limit((k as f64 / 2.0 - i as f64) * h);
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        acc / h.powi(k as i32)
    };
    let mut table: Vec<f64> = (0..levels).map(|l| central(h / 2f64.powi(l as i32))).collect();
    // error expands in h², h⁴, …
    for order in 1..levels {
        let factor = 4f64.powi(order as i32);
        for l in (order..levels).rev() {
            table[l] = (factor * table[l] - table[l - 1]) / (factor - 1.0);
        }
    }
    table[levels - 1]
}
