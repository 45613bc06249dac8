//! `O(N log N)` writhe via the bi-alternating inversion number.
//!
//! A permutation `π` of odd size `N` is turned into `σ = π ∘ τ⁻¹`
//! (`τ(x) = 2x mod N`), rotated so that its top value sits last, and truncated
//! to an even permutation with the same bi-alternating inversion number
//! `ι̂̂`. For even `σ` split at position `2l`,
//!
//! ```text
//! ι̂̂(σ) = ι̂̂(σ_L) + ι̂̂(σ_R) + 2·lk(σ)
//! lk(σ) = ½ Σ_{y<2l} Σ_{x≥2l} (−1)^{x+y} sign(σ(x) − σ(y))
//! ```
//!
//! where `σ_L`, `σ_R` are the rank-compressed halves. Each level is linear
//! (counting sort through the inverse), and the halves are balanced, so the
//! whole recursion is `O(N log N)`.

use crate::error::{require_even, require_odd, Error, Result};
use crate::perm::Permutation;

/// Largest node size at which debug builds re-check the recursion identity
/// against the quadratic sum.
const DEBUG_CHECK_MAX: usize = 64;

/// Tuning knobs for [`writhe_fast_with`] and [`bialt_fast_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FastConfig {
    /// Evaluate the two halves of nodes at least this large in parallel.
    /// `None` keeps everything on the calling thread.
    pub parallel_threshold: Option<usize>,
}

/// Halves of an even permutation together with their linking term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub left: Permutation,
    pub right: Permutation,
    pub lk: i64,
}

fn check_split(size: usize, l: usize) -> Result<()> {
    require_even(size)?;
    if l == 0 || 2 * l >= size {
        return Err(Error::InvalidParameter(format!(
            "split l = {l} leaves an empty part of a size-{size} permutation"
        )));
    }
    Ok(())
}

/// One linear pass over values: rank-compresses both halves into `out` and
/// returns the doubled linking term `2·lk`.
///
/// `vals` is a permutation of `0..vals.len()`, `inv` is scratch of the same
/// length.
#[inline]
fn split_pass(vals: &[u32], out: &mut [u32], inv: &mut [u32], split: usize) -> i64 {
    for (i, &v) in vals.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    let mut left_rank = 0u32;
    let mut right_rank = 0u32;
    // y-prefix: Σ (−1)^i over left positions holding a value below t
    let mut y_below = 0i64;
    let mut twice_lk = 0i64;
    for &pos in inv.iter() {
        let pos = pos as usize;
        if pos < split {
            out[pos] = left_rank;
            left_rank += 1;
            y_below += if pos % 2 == 0 { 1 } else { -1 };
        } else {
            out[pos] = right_rank;
            right_rank += 1;
            // Σ_{y∈L} (−1)^y sign(σ(x) − σ(y)) = 2·y_below − Σ_{y∈L} (−1)^y,
            // and the last sum vanishes because |L| is even.
            let term = 2 * y_below;
            twice_lk += if pos % 2 == 0 { term } else { -term };
        }
    }
    twice_lk
}

fn halves(size: usize) -> usize {
    // σ ∈ S_{2(l+r)} with l = ⌈n/2⌉, r = ⌊n/2⌋ where size = 2n
    let n = size / 2;
    2 * n.div_ceil(2)
}

fn bialt_quadratic(vals: &[u32]) -> i64 {
    let mut total = 0;
    for x in 1..vals.len() {
        for y in 0..x {
            let s = if vals[x] > vals[y] { 1 } else { -1 };
            total += if (x + y) % 2 == 0 { s } else { -s };
        }
    }
    total
}

fn bialt_rec(vals: &mut [u32], out: &mut [u32], inv: &mut [u32], cfg: &FastConfig) -> i64 {
    let m = vals.len();
    if m == 2 {
        return if vals[0] < vals[1] { -1 } else { 1 };
    }
    let expected = (cfg!(debug_assertions) && m <= DEBUG_CHECK_MAX).then(|| bialt_quadratic(vals));
    let split = halves(m);
    let twice_lk = split_pass(vals, out, inv, split);

    let (out_l, out_r) = out.split_at_mut(split);
    let (vals_l, vals_r) = vals.split_at_mut(split);
    let (inv_l, inv_r) = inv.split_at_mut(split);
    // children live in `out`; `vals` becomes their scratch
    let (left, right) = match cfg.parallel_threshold {
        Some(t) if m >= t => rayon::join(
            || bialt_rec(out_l, vals_l, inv_l, cfg),
            || bialt_rec(out_r, vals_r, inv_r, cfg),
        ),
        _ => (
            bialt_rec(out_l, vals_l, inv_l, cfg),
            bialt_rec(out_r, vals_r, inv_r, cfg),
        ),
    };
    debug_assert!(twice_lk % 2 == 0);
    let total = left + right + twice_lk;
    if let Some(expected) = expected {
        assert_eq!(total, expected, "recursion identity violated at size {m}");
    }
    total
}

fn bialt_owned(mut vals: Vec<u32>, cfg: &FastConfig) -> i64 {
    let m = vals.len();
    let mut out = vec![0u32; m];
    let mut inv = vec![0u32; m];
    bialt_rec(&mut vals, &mut out, &mut inv, cfg)
}

fn to_u32(p: &Permutation) -> Result<Vec<u32>> {
    if p.size() > u32::MAX as usize {
        return Err(Error::TooLarge {
            what: "permutation size",
            value: p.size(),
            limit: u32::MAX as usize,
        });
    }
    Ok(p.as_slice().iter().map(|&v| v as u32).collect())
}

/// `σ_L`, `σ_R`: rank compressions of the first `2l` and remaining entries.
pub fn induced_split(sigma: &Permutation, l: usize) -> Result<(Permutation, Permutation)> {
    let s = split(sigma, l)?;
    Ok((s.left, s.right))
}

/// The linking term between the first `2l` positions and the rest.
pub fn lk_split(sigma: &Permutation, l: usize) -> Result<i64> {
    Ok(split(sigma, l)?.lk)
}

/// Both halves and the linking term from a single linear pass.
pub fn split(sigma: &Permutation, l: usize) -> Result<SplitResult> {
    let size = sigma.size();
    check_split(size, l)?;
    let vals = to_u32(sigma)?;
    let mut out = vec![0u32; size];
    let mut inv = vec![0u32; size];
    let twice_lk = split_pass(&vals, &mut out, &mut inv, 2 * l);
    assert!(twice_lk % 2 == 0, "odd doubled linking term {twice_lk}");
    let to_perm = |s: &[u32]| Permutation::from_vec_unchecked(s.iter().map(|&v| v as usize).collect());
    Ok(SplitResult {
        left: to_perm(&out[..2 * l]),
        right: to_perm(&out[2 * l..]),
        lk: twice_lk / 2,
    })
}

/// Bi-alternating inversion number of an even-size permutation by divide and
/// conquer.
pub fn bialt_fast(sigma: &Permutation) -> Result<i64> {
    bialt_fast_with(sigma, &FastConfig::default())
}

pub fn bialt_fast_with(sigma: &Permutation, cfg: &FastConfig) -> Result<i64> {
    require_even(sigma.size())?;
    Ok(bialt_owned(to_u32(sigma)?, cfg))
}

/// Writhe of an odd-size permutation in `O(N log N)`.
pub fn writhe_fast(p: &Permutation) -> Result<i64> {
    writhe_fast_with(p, &FastConfig::default())
}

pub fn writhe_fast_with(p: &Permutation, cfg: &FastConfig) -> Result<i64> {
    let size = p.size();
    require_odd(size)?;
    if size > u32::MAX as usize {
        return Err(Error::TooLarge {
            what: "permutation size",
            value: size,
            limit: u32::MAX as usize,
        });
    }
    if size == 1 {
        return Ok(0);
    }
    let map = p.as_slice();
    // σ = π ∘ τ⁻¹ with τ⁻¹(x) = ((N+1)/2)·x mod N, so that σ ∘ τ = π
    let half = (size + 1) / 2;
    let sigma: Vec<usize> = (0..size).map(|x| map[(half * x) % size]).collect();
    // rotate positions so the top value lands last, then drop it
    let top = size - 1;
    let pos = sigma.iter().position(|&v| v == top).expect("bijection");
    let even: Vec<u32> = (0..top).map(|i| sigma[(i + pos + 1) % size] as u32).collect();
    Ok(bialt_owned(even, cfg))
}
