//! Acceptance suite. Runs every acceptance criterion at its stated tolerance
//! and prints one PASS/FAIL line per criterion; exits non-zero on any failure.
//!
//! Run alone with `cargo test -p writhe --test acceptance`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use writhe::bench::{fit_exponent, power_ladder, time_writhe};
use writhe::corr::{r_alpha_beta_exact, writhe_avg_form, RankPairs};
use writhe::limit::{
    cf_derivative_at_zero, sample_w, sample_w_laplace, tail_rate_estimate, SampleStream,
    TailMode, TruncationPolicy,
};
use writhe::mc::{ks_to_limit, normalized_samples, random_permutation, Algorithm, McConfig};
use writhe::moments::{
    average_sign, break_sum, break_sum_cycle, euler_zigzag, eulerian, exact_moment_poly,
    eval_poly, moment_enumeration, mu_k, mu_k_recurrence, parity_count, to_f64, ParityVector,
    Rational,
};
use writhe::perm::{all_permutations, halve_map};
use writhe::stats::{ks_critical_two_sample, ks_two_sample, sample_moment};
use writhe::{
    inv_graphical, writhe_fast, DirectedGraph, InversionVariant, Permutation, Side,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn writhe_by_definition(s: &[usize]) -> i64 {
    let size = s.len();
    let mut total = 0;
    for i in 0..size {
        for j in 1..=size / 2 {
            total += if s[(i + j) % size] > s[i] { 1 } else { -1 };
        }
    }
    total
}

fn bialt_by_definition(s: &[usize]) -> i64 {
    let mut total = 0;
    for x in 0..s.len() {
        for y in 0..x {
            let sg = if s[x] > s[y] { 1 } else { -1 };
            total += if (x + y) % 2 == 0 { sg } else { -sg };
        }
    }
    total
}

fn exact_small_moments() -> Check {
    let start = Instant::now();
    let expected = [(1usize, q(1, 1)), (2, q(10, 3)), (3, q(7, 1))];
    for (n, want) in &expected {
        let mut sum2 = BigInt::zero();
        let mut sum4 = BigInt::zero();
        let mut count = BigInt::zero();
        for p in all_permutations(2 * n + 1) {
            let w = BigInt::from(writhe_by_definition(p.as_slice()));
            sum2 += &w * &w;
            sum4 += &w * &w * &w * &w;
            count += 1;
        }
        let m2 = Rational::new(sum2, count.clone());
        let m4 = Rational::new(sum4, count);
        ensure(&m2 == want, || format!("E[w^2] at n={n} is {m2}, want {want}"))?;
        let closed2 = eval_poly(&exact_moment_poly(2).map_err(|e| e.to_string())?, *n as u64);
        let closed4 = eval_poly(&exact_moment_poly(4).map_err(|e| e.to_string())?, *n as u64);
        ensure(closed2 == m2, || format!("closed E[w^2] at n={n}: {closed2}"))?;
        ensure(closed4 == m4, || format!("closed E[w^4] at n={n}: {closed4} vs {m4}"))?;
        let lib = moment_enumeration(*n, 2).map_err(|e| e.to_string())?;
        ensure(lib == m2, || format!("library enumeration at n={n}: {lib}"))?;
        if *n == 1 {
            ensure(m4 == q(1, 1), || format!("E[w^4] at n=1 is {m4}"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("E[w^2] = 1, 10/3, 7; E[w^4](1) = 1; {secs:.2}s"))
}

fn limiting_moments() -> Check {
    for k in (2..=20).step_by(2) {
        let a = mu_k(k).map_err(|e| e.to_string())?;
        let b = mu_k_recurrence(k).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("k={k}: partition form {a} vs recurrence {b}"))?;
    }
    let m2 = mu_k(2).map_err(|e| e.to_string())?;
    let m4 = mu_k(4).map_err(|e| e.to_string())?;
    ensure(m2 == q(2, 3) && m4 == q(76, 45), || format!("mu_2 = {m2}, mu_4 = {m4}"))?;
    Ok(format!("agree for k = 2..20; mu_2 = {m2}, mu_4 = {m4}"))
}

fn lemma_suite() -> Check {
    let avg = |g: DirectedGraph| average_sign(&g).map_err(|e| e.to_string());
    let path = |m| DirectedGraph::path_with_edges(m).unwrap();
    let cycle = |m| DirectedGraph::cycle_with_edges(m).unwrap();
    ensure(avg(path(2))? == q(-1, 3), || "A(P_2)".into())?;
    ensure(avg(path(4))? == q(2, 15), || "A(P_4)".into())?;
    ensure(avg(cycle(2))? == q(-1, 1), || "A(C_2)".into())?;
    ensure(avg(cycle(4))? == q(1, 3), || "A(C_4)".into())?;

    for m in [2, 4, 6] {
        let closed = break_sum_cycle(m).map_err(|e| e.to_string())?;
        let direct = break_sum(&cycle(m)).map_err(|e| e.to_string())?;
        ensure(closed == direct, || format!("B(C_{m}): {closed} vs {direct}"))?;
    }

    // lattice oracle: increasing t_1 < … < t_v in {0, …, 2n} with parities ε
    fn lattice(next: u64, hi: u64, eps: &[i8]) -> u64 {
        match eps.split_first() {
            None => 1,
            Some((&e, rest)) => (next..=hi)
                .filter(|t| (t % 2 == 0) == (e > 0))
                .map(|t| lattice(t + 1, hi, rest))
                .sum(),
        }
    }
    let mut checked = 0;
    for n in 0..=6u64 {
        for v in 1..=5 {
            for eps in ParityVector::all(v) {
                let want = BigUint::from(lattice(0, 2 * n, eps.entries()));
                ensure(parity_count(n, &eps) == want, || format!("runs count n={n} eps={eps}"))?;
                checked += 1;
            }
        }
    }

    // Σ_d (−1)^d A_{m,d} is ±A_m for odd m and 0 for even m; both sides
    // recomputed by enumeration
    for m in 1..=8usize {
        let mut by_descents = vec![0i64; m];
        let mut alternating = 0i64;
        for p in all_permutations(m) {
            let s = p.as_slice();
            by_descents[s.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
            if s.windows(3).all(|w| (w[0] < w[1]) != (w[1] < w[2])) && (m < 2 || s[0] < s[1]) {
                alternating += 1;
            }
        }
        for (d, &c) in by_descents.iter().enumerate() {
            ensure(eulerian(m, d).map_err(|e| e.to_string())? == BigInt::from(c), || {
                format!("Eulerian({m},{d})")
            })?;
        }
        ensure(euler_zigzag(m) == BigInt::from(alternating), || format!("A_{m}"))?;
        let alt: i64 = by_descents
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { *c } else { -c })
            .sum();
        let want = if m % 2 == 1 {
            if (m - 1) / 2 % 2 == 0 { alternating } else { -alternating }
        } else {
            0
        };
        ensure(alt == want, || format!("alternating sum at m={m}: {alt} vs {want}"))?;
    }
    Ok(format!(
        "average signs, B(C_2,4,6), {checked} runs identities, Euler/Eulerian m <= 8"
    ))
}

fn algorithm_equivalence() -> Check {
    let mut compared = 0usize;
    for p in all_permutations(7) {
        let w = writhe_by_definition(p.as_slice());
        let fast = writhe_fast(&p).map_err(|e| e.to_string())?;
        let naive = p.writhe_naive().map_err(|e| e.to_string())?;
        ensure(fast == naive && naive == w, || format!("{p}: fast {fast}, naive {naive}"))?;
        compared += 1;
    }
    for size in [101usize, 1001, 10_001] {
        let mismatches: usize = (0..1000u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = SampleStream::new(2024, size as u64).substream(i);
                let p = random_permutation(size, &mut rng);
                usize::from(writhe_fast(&p).unwrap() != p.writhe_naive().unwrap())
            })
            .sum();
        ensure(mismatches == 0, || format!("{mismatches} mismatches at N={size}"))?;
        compared += 1000;
    }
    Ok(format!("{compared} permutations, 0 mismatches"))
}

fn identity_suite() -> Check {
    // distribution equality: w over S_5, ι̂̂ over S_5, ι̂̂ over S_4 (x5)
    let tally = |vals: Vec<i64>, weight: u64| {
        let mut m = BTreeMap::new();
        for v in vals {
            *m.entry(v).or_insert(0u64) += weight;
        }
        m
    };
    let w5 = tally(all_permutations(5).map(|p| writhe_by_definition(p.as_slice())).collect(), 1);
    let b5 = tally(all_permutations(5).map(|p| bialt_by_definition(p.as_slice())).collect(), 1);
    let b4 = tally(all_permutations(4).map(|p| bialt_by_definition(p.as_slice())).collect(), 5);
    ensure(w5 == b5 && b5 == b4, || format!("{w5:?} / {b5:?} / {b4:?}"))?;
    let tau = halve_map(5).unwrap();
    for s in all_permutations(5) {
        let lhs = writhe_by_definition(s.compose(&tau).unwrap().as_slice());
        ensure(lhs == s.inversion_stat(InversionVariant::Bialternating), || {
            format!("w(s o tau) at {s}")
        })?;
    }

    for n in [2usize, 3] {
        let g = DirectedGraph::clockwise_tournament(n).unwrap();
        for p in all_permutations(2 * n + 1) {
            let inv = inv_graphical(&p, &g).unwrap() as i64;
            let w = writhe_by_definition(p.as_slice());
            ensure(w == ((2 * n + 1) * n) as i64 - 2 * inv, || format!("tournament at {p}"))?;
        }
    }

    for p in all_permutations(7) {
        let w = writhe_by_definition(p.as_slice());
        let r = r_alpha_beta_exact(&RankPairs::from_permutation(&p)).map_err(|e| e.to_string())?;
        ensure(r == q(w, 1), || format!("R_alpha_beta at {p}: {r} vs {w}"))?;
        let avg = writhe_avg_form(&p).map_err(|e| e.to_string())?;
        ensure(avg == w, || format!("averaged form at {p}"))?;
    }

    for n in [2usize, 3] {
        let size = 2 * n + 1;
        let bound = (n * n) as i64;
        let plus = Permutation::extremal(n, 1).unwrap();
        let minus = Permutation::extremal(n, -1).unwrap();
        ensure(writhe_by_definition(plus.as_slice()) == bound, || "extremal +".into())?;
        ensure(writhe_by_definition(minus.as_slice()) == -bound, || "extremal -".into())?;
        let mut orbit = Vec::new();
        for a in 0..size as i64 {
            for b in 0..size as i64 {
                orbit.push(plus.rotate(a, Side::Left).rotate(b, Side::Right));
                orbit.push(minus.rotate(a, Side::Left).rotate(b, Side::Right));
            }
        }
        for p in all_permutations(size) {
            let w = writhe_by_definition(p.as_slice());
            ensure(w.abs() <= bound && (w - bound).rem_euclid(2) == 0, || {
                format!("bound/parity at {p}")
            })?;
            ensure(w.abs() < bound || orbit.contains(&p), || format!("extremal {p}"))?;
            for x in 0..size {
                let d = writhe_by_definition(p.adjacent_circular_transpose(x).unwrap().as_slice()) - w;
                ensure(d == 2 || d == -2, || format!("step {d} at {p}, x={x}"))?;
            }
        }
    }
    Ok("writhe/bialternating distributions, tournament S_5/S_7, R_ab and averaged form on S_7, bound/parity/steps".into())
}

fn distributional_convergence() -> Check {
    let start = Instant::now();
    let n = 500u64;
    let samples = normalized_samples(
        n as usize,
        100_000,
        &SampleStream::new(500, 0),
        &McConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let (var, se) = sample_moment(&samples, 2);
    let exact = (2.0 * (n * n) as f64 + n as f64) / (3.0 * (n * n) as f64);
    ensure((var - exact).abs() <= 0.02, || format!("variance {var}"))?;
    let ks = ks_to_limit(&samples);
    ensure(ks <= 0.02, || format!("KS {ks}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "variance {var:.4} (se {se:.4}, exact {exact:.4}), KS {ks:.4}, {secs:.1}s"
    ))
}

fn parallel_draws<F>(count: usize, seed: u64, draw: F) -> Vec<f64>
where
    F: Fn(&mut SampleStream) -> f64 + Sync,
{
    const CHUNKS: usize = 100;
    let base = SampleStream::new(seed, 0);
    (0..CHUNKS)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut s = base.substream(c as u64);
            let take = count / CHUNKS + usize::from(c < count % CHUNKS);
            (0..take).map(|_| draw(&mut s)).collect::<Vec<_>>()
        })
        .collect()
}

fn limit_numerics() -> Check {
    let mu = |k| to_f64(&mu_k(k).unwrap());
    let d2 = -cf_derivative_at_zero(2, 0.2, 4);
    let d4 = cf_derivative_at_zero(4, 0.2, 4);
    ensure(((d2 - mu(2)) / mu(2)).abs() < 1e-3, || format!("cf mu_2 {d2}"))?;
    ensure(((d4 - mu(4)) / mu(4)).abs() < 1e-3, || format!("cf mu_4 {d4}"))?;

    let policy = TruncationPolicy::new(1000, TailMode::Gaussian).unwrap();
    let w = parallel_draws(1_000_000, 77, |s| sample_w(s, &policy));
    let (m2, se2) = sample_moment(&w, 2);
    let (m4, se4) = sample_moment(&w, 4);
    ensure((m2 - 2.0 / 3.0).abs() <= 3.0 * se2, || format!("variance {m2} +- {se2}"))?;
    ensure((m4 - 76.0 / 45.0).abs() <= 3.0 * se4, || format!("4th moment {m4} +- {se4}"))?;

    let laplace_policy = TruncationPolicy::new(40, TailMode::Gaussian).unwrap();
    let l = parallel_draws(100_000, 78, |s| sample_w_laplace(s, &laplace_policy));
    let d = ks_two_sample(&w[..100_000], &l);
    let crit = ks_critical_two_sample(100_000, 100_000, 0.01);
    ensure(d < crit, || format!("two-sample KS {d} >= {crit}"))?;
    Ok(format!(
        "cf moments {d2:.6}, {d4:.5}; sampled E[W^2] {m2:.4}+-{se2:.4}, E[W^4] {m4:.3}+-{se4:.3}; KS {d:.4} < {crit:.4}"
    ))
}

fn tail_diagnostic() -> Check {
    let grid: Vec<f64> = (0..=20).map(|i| 3.0 + 0.1 * i as f64).collect();
    let slope = tail_rate_estimate(&grid).map_err(|e| e.to_string())?;
    let target = -PI * PI / 4.0;
    ensure(slope >= 1.15 * target && slope <= 0.85 * target, || format!("slope {slope}"))?;
    Ok(format!("slope {slope:.4} vs {target:.4}"))
}

fn performance() -> Check {
    let mut rng = SampleStream::new(1, 0);
    let p = random_permutation(1_000_001, &mut rng);
    let start = Instant::now();
    let w = writhe_fast(&p).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    std::hint::black_box(w);
    ensure(secs < 5.0, || format!("N = 10^6+1 took {secs:.2}s"))?;

    let fast: Vec<_> = power_ladder(14, 20)
        .into_iter()
        .map(|n| time_writhe(n, Algorithm::Fast, 7, 3))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let naive: Vec<_> = power_ladder(10, 14)
        .into_iter()
        .map(|n| time_writhe(n, Algorithm::Naive, 5, 3))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (ef, en) = (fit_exponent(&fast), fit_exponent(&naive));
    ensure((1.0..=1.3).contains(&ef), || format!("fast exponent {ef:.3}"))?;
    ensure((1.8..=2.2).contains(&en), || format!("naive exponent {en:.3}"))?;
    Ok(format!(
        "N = 10^6+1 in {secs:.3}s; exponents fast {ef:.3}, naive {en:.3}"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("exact small-n moments", exact_small_moments),
        ("limiting moments", limiting_moments),
        ("lemma verification suite", lemma_suite),
        ("algorithm equivalence", algorithm_equivalence),
        ("identity suite", identity_suite),
        ("distributional convergence", distributional_convergence),
        ("limit-distribution numerics", limit_numerics),
        ("tail diagnostic", tail_diagnostic),
        ("performance", performance),
    ];
    let total = criteria.len();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}/{total}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}/{total}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", total - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
