//! Small statistical helpers shared by the samplers and the Monte Carlo
//! engine.

/// `k`-th raw sample moment and its standard error `sd(x^k)/√n`.
pub fn sample_moment(xs: &[f64], k: u32) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let powers = xs.iter().map(|&x| x.powi(k as i32));
    let mean = powers.clone().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = powers.map(|p| (p - mean) * (p - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Asymptotic Kolmogorov coefficient `c(α) = √(−½ ln(α/2))`.
pub fn ks_coefficient(alpha: f64) -> f64 {
    (-0.5 * (alpha / 2.0).ln()).sqrt()
}

/// Critical value of the one-sample KS statistic for `n` draws.
pub fn ks_critical_one_sample(n: usize, alpha: f64) -> f64 {
    ks_coefficient(alpha) / (n as f64).sqrt()
}

/// Critical value of the two-sample KS statistic for sizes `n`, `m`.
pub fn ks_critical_two_sample(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    ks_coefficient(alpha) * ((n + m) / (n * m)).sqrt()
}

/// `sup |F_n − F|` for a sample against a continuous CDF.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// `sup |F_a − F_b|` between two samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
