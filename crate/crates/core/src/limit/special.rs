//! Hurwitz zeta by Euler–Maclaurin summation.

/// `B_{2j} / (2j)!` for `j = 1..=12`.
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 14_101_100_039_391_805_440_000.0,
    -236_364_091.0 / 1_693_824_136_731_743_669_452_800_000.0,
];

/// `ζ(s, q) = Σ_{k≥0} (q + k)^{−s}` for `s > 1`, `q > 0`.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    assert!(s > 1.0 && q > 0.0, "hurwitz_zeta needs s > 1, q > 0");
    // shift far enough that the remainder expansion is sharply convergent
    let m = (s.ceil() as usize).max(12);
    let mut sum: f64 = (0..m).map(|k| (q + k as f64).powf(-s)).sum();
    let a = q + m as f64;
    let a_s = a.powf(-s);
    sum += a * a_s / (s - 1.0) + 0.5 * a_s;
    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · a^{−s−2j+1}
    let mut rising = s * a_s / a;
    for (j, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = b * rising;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0) / (a * a);
    }
    sum
}

/// `Σ_{n > k} 1/n²`.
pub fn inverse_square_tail(k: usize) -> f64 {
    hurwitz_zeta(2.0, k as f64 + 1.0)
}
