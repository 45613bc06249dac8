//! Density, distribution function and quantiles of `W` by Fourier inversion
//! of the real, even characteristic function.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::cf::cf_w_limit;
use super::quad::integrate;
use crate::error::{Error, Result};
use crate::stats::linear_fit;

const ABS_TOL: f64 = 1e-14;
const REL_TOL: f64 = 1e-8;
const MAX_INTERVALS: usize = 2000;
/// The integrals stop where `φ_W` has decayed below this.
const CUTOFF_LEVEL: f64 = 1e-16;

/// Upper limit for the inversion integrals: the first `t` on a `¼` grid with
/// `φ_W(t) < 1e-16`. `φ_W` is a product of functions decreasing in `|t|`, so
/// everything beyond is smaller still.
pub fn cf_cutoff() -> f64 {
    static CUTOFF: OnceLock<f64> = OnceLock::new();
    *CUTOFF.get_or_init(|| {
        let mut t = 1.0;
        while cf_w_limit(t) >= CUTOFF_LEVEL {
            t += 0.25;
        }
        assert!(cf_w_limit(t) < 1e-12, "cutoff condition violated at t = {t}");
        t
    })
}

/// `f_W(x) = (1/π) ∫₀^∞ φ_W(t) cos(tx) dt`.
pub fn pdf_w(x: f64) -> f64 {
    let q = integrate(
        |t| cf_w_limit(t) * (t * x).cos(),
        0.0,
        cf_cutoff(),
        ABS_TOL,
        REL_TOL,
        MAX_INTERVALS,
    );
    q.value / PI
}

/// `(1/π) ∫₀^∞ φ_W(t) sin(tx)/t dt`, which is `∫₀^x f_W`.
fn half_mass(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let q = integrate(
        |t| {
            if t == 0.0 {
                x
            } else {
                cf_w_limit(t) * (t * x).sin() / t
            }
        },
        0.0,
        cf_cutoff(),
        ABS_TOL,
        REL_TOL,
        MAX_INTERVALS,
    );
    q.value / PI
}

/// `F_W(x) = ½ + ∫₀^x f_W`, anchored by symmetry at `F_W(0) = ½`.
pub fn cdf_w(x: f64) -> f64 {
    (0.5 + half_mass(x)).clamp(0.0, 1.0)
}

/// `P[|W| > t]` for `t ≥ 0`.
pub fn two_sided_tail(t: f64) -> f64 {
    (1.0 - 2.0 * half_mass(t.abs())).max(0.0)
}

/// Inverse of [`cdf_w`] by bisection.
pub fn quantile_w(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile level must lie in (0, 1), got {q}"
        )));
    }
    if q == 0.5 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while cdf_w(hi) < q || cdf_w(-hi) > q {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::InvalidParameter(format!(
                "quantile level {q} is beyond the resolvable tail"
            )));
        }
    }
    let (mut lo, mut hi) = (-hi, hi);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if cdf_w(mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Least-squares slope of `log P[|W| > t]` against `t` over `grid`.
pub fn tail_rate_estimate(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::InvalidParameter("need at least two grid points".into()));
    }
    if grid[0] <= 0.0 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "grid must be positive and strictly increasing".into(),
        ));
    }
    let logs: Vec<f64> = grid.iter().map(|&t| two_sided_tail(t).ln()).collect();
    if logs.iter().any(|l| !l.is_finite()) {
        return Err(Error::InvalidParameter(
            "grid reaches past the resolvable tail".into(),
        ));
    }
    Ok(linear_fit(grid, &logs).0)
}

/// Tabulated density and distribution function on a uniform grid.
///
/// The distribution column is built by integrating the density outward from
/// `F(0) = ½` with Simpson's rule on half steps, and [`LimitTable::cdf`]
/// interpolates with cubic Hermite segments whose slopes are the density.
#[derive(Debug, Clone)]
pub struct LimitTable {
    x: Vec<f64>,
    pdf: Vec<f64>,
    cdf: Vec<f64>,
    step: f64,
}

impl LimitTable {
    /// Grid `−half_width, −half_width + step, …, half_width`; `half_width`
    /// must be a whole number of steps.
    pub fn new(half_width: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && half_width > 0.0) {
            return Err(Error::InvalidParameter("grid needs positive extent and step".into()));
        }
        let half = (half_width / step).round() as usize;
        if half == 0 || ((half as f64) * step - half_width).abs() > 1e-9 * half_width {
            return Err(Error::InvalidParameter(
                "half width must be a positive multiple of the step".into(),
            ));
        }
        // density at nodes and midpoints of the right half; the left mirrors
        let nodes: Vec<f64> = (0..=2 * half)
            .into_par_iter()
            .map(|i| pdf_w(i as f64 * step / 2.0))
            .collect();
        let mut right_cdf = Vec::with_capacity(half + 1);
        let mut acc = 0.5;
        right_cdf.push(acc);
        for i in 0..half {
            acc += step / 6.0 * (nodes[2 * i] + 4.0 * nodes[2 * i + 1] + nodes[2 * i + 2]);
            right_cdf.push(acc);
        }
        let mut x = Vec::with_capacity(2 * half + 1);
        let mut pdf = Vec::with_capacity(2 * half + 1);
        let mut cdf = Vec::with_capacity(2 * half + 1);
        for i in (1..=half).rev() {
            x.push(-(i as f64) * step);
            pdf.push(nodes[2 * i]);
            cdf.push(1.0 - right_cdf[i]);
        }
        for i in 0..=half {
            x.push(i as f64 * step);
            pdf.push(nodes[2 * i]);
            cdf.push(right_cdf[i]);
        }
        Ok(Self { x, pdf, cdf, step })
    }

    /// Shared table on `[−8, 8]` with step `0.01`, built on first use.
    pub fn standard() -> &'static LimitTable {
        static TABLE: OnceLock<LimitTable> = OnceLock::new();
        TABLE.get_or_init(|| LimitTable::new(8.0, 0.01).expect("valid grid"))
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn pdf_values(&self) -> &[f64] {
        &self.pdf
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    /// Interpolated `F_W(x)`; outside the grid it falls back to [`cdf_w`].
    pub fn cdf(&self, x: f64) -> f64 {
        let first = self.x[0];
        let last = *self.x.last().expect("nonempty grid");
        if x < first || x > last {
            return cdf_w(x);
        }
        let i = (((x - first) / self.step) as usize).min(self.x.len() - 2);
        let h = self.step;
        let s = (x - self.x[i]) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
            s * (1.0 - s) * (1.0 - s),
            s * s * (3.0 - 2.0 * s),
            s * s * (s - 1.0),
        );
        h00 * self.cdf[i] + h10 * h * self.pdf[i] + h01 * self.cdf[i + 1] + h11 * h * self.pdf[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_normalised() {
        assert_eq!(cdf_w(0.0), 0.5);
        for &x in &[0.3, 1.0, 2.2, 4.0] {
            assert!((pdf_w(x) - pdf_w(-x)).abs() < 1e-14);
            assert!((cdf_w(x) + cdf_w(-x) - 1.0).abs() < 1e-12);
        }
        // P[|W| > 6] ≈ 1.1e-6, so [−6, 6] alone misses 1 by slightly more
        // than 1e-6; the missing mass is accounted for by the tail function
        let mass = integrate(pdf_w, -6.0, 6.0, 1e-12, 1e-10, 500).value;
        assert!((mass + two_sided_tail(6.0) - 1.0).abs() < 1e-9, "mass {mass}");
        let mass = integrate(pdf_w, -8.0, 8.0, 1e-12, 1e-10, 500).value;
        assert!((mass - 1.0).abs() < 1e-6, "mass {mass}");
        let m2 = integrate(|x| x * x * pdf_w(x), -12.0, 12.0, 1e-12, 1e-10, 500).value;
        assert!((m2 - 2.0 / 3.0).abs() < 1e-4, "second moment {m2}");
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        for &x in &[-2.0, 0.5, 1.7] {
            let direct = 0.5 + integrate(pdf_w, 0.0, x, 1e-13, 1e-11, 200).value;
            assert!((direct - cdf_w(x)).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn positive_on_bulk() {
        let mut x = -4.0;
        while x <= 4.0 {
            let f = pdf_w(x);
            assert!(f.is_finite() && f > 0.0, "x={x}");
            x += 0.25;
        }
    }

    #[test]
    fn quantiles_invert() {
        for &q in &[0.01, 0.25, 0.5, 0.9, 0.999] {
            let x = quantile_w(q).unwrap();
            assert!((cdf_w(x) - q).abs() < 1e-9);
        }
        assert!(quantile_w(0.0).is_err() && quantile_w(1.0).is_err());
        assert!(quantile_w(f64::NAN).is_err());
    }

    #[test]
    fn table_agrees_with_pointwise() {
        let table = LimitTable::new(2.0, 0.05).unwrap();
        assert_eq!(table.x().len(), 81);
        for &x in &[-1.93, -0.4, 0.0, 0.77, 1.99] {
            assert!((table.cdf(x) - cdf_w(x)).abs() < 5e-8, "x={x}");
        }
        assert!(LimitTable::new(1.0, 0.3).is_err());
    }

    #[test]
    fn tail_slope() {
        assert!(tail_rate_estimate(&[1.0]).is_err());
        assert!(tail_rate_estimate(&[2.0, 1.0]).is_err());
        let grid: Vec<f64> = (0..=8).map(|i| 3.0 + 0.25 * i as f64).collect();
        let slope = tail_rate_estimate(&grid).unwrap();
        let target = -PI * PI / 4.0;
        assert!(slope < 0.85 * target && slope > 1.15 * target, "{slope}");
    }
}
