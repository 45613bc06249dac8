//! Average signs of directed graphs and their breaking sums.
//!
//! The average sign of a graph on `v` vertices is
//! `A(G) = (1/v!) Σ_{σ ∈ S_v} Π_{(i,j) ∈ E} sign(σ(j) − σ(i))`.
//! For a 2-regular graph `G'`, the breaking sum is
//! `B(G') = Σ_{G ≺ G'} (−1)^{v(G)} A(G)` over the `2^{v(G')}` ways of
//! splitting a subset of its vertices into pairs of degree-one vertices.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numbers::{bernoulli, euler_zigzag};
use super::Rational;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::perm::Permutation;

/// Brute-force average signs enumerate `v!` orderings.
pub const MAX_BRUTE_VERTICES: usize = 10;

const MAX_BREAK_VERTICES: usize = 8;

type SignKey = (usize, Vec<(usize, usize)>);

fn sign_cache() -> &'static Mutex<HashMap<SignKey, Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<SignKey, Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact average sign by enumerating all `v!` orderings.
///
/// Results are cached by the sorted edge list of the given labelling.
pub fn average_sign(graph: &DirectedGraph) -> Result<Rational> {
    let v = graph.num_vertices();
    if v > MAX_BRUTE_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for brute-force average sign",
            value: v,
            limit: MAX_BRUTE_VERTICES,
        });
    }
    let mut edges: Vec<(usize, usize)> = graph.edges().to_vec();
    edges.sort_unstable();
    let key = (v, edges);
    if let Some(hit) = sign_cache().lock().expect("sign cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let value = if key.1.is_empty() {
        Rational::one()
    } else {
        let total = signed_ordering_sum(v, &key.1);
        Rational::new(BigInt::from(total), factorial(v))
    };
    sign_cache()
        .lock()
        .expect("sign cache poisoned")
        .insert(key, value.clone());
    Ok(value)
}

/// `Σ_σ Π_{(i,j)} sign(σ(j) − σ(i))` via Heap's algorithm.
fn signed_ordering_sum(v: usize, edges: &[(usize, usize)]) -> i64 {
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let mut order: Vec<usize> = (0..v).collect();
    let eval = |order: &[usize]| -> i64 {
        let negatives = edges
            .iter()
            .filter(|&&(a, b)| order[b] < order[a])
            .count();
        if negatives % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut total = eval(&order);
    let mut c = vec![0usize; v];
    let mut i = 0;
    while i < v {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            total += eval(&order);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Average sign of a graph as the product over its connected components.
fn average_sign_by_components(graph: &DirectedGraph) -> Result<Rational> {
    graph
        .components()
        .iter()
        .try_fold(Rational::one(), |acc, c| Ok(acc * average_sign(c)?))
}

/// Shape selector for [`average_sign_closed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrCycle {
    Path,
    Cycle,
}

/// Closed form in terms of Euler numbers:
/// `A(P_{m−1}) = −A(C_{m+1}) = (−1)^{(m−1)/2} A_m / m!` for odd `m`, else 0.
///
/// `edges` is the number of edges of the path (≥ 0) or cycle (≥ 2).
pub fn average_sign_closed(kind: PathOrCycle, edges: usize) -> Result<Rational> {
    let m = match kind {
        PathOrCycle::Path => edges + 1,
        PathOrCycle::Cycle => {
            if edges < 2 {
                return Err(Error::InvalidParameter(format!(
                    "an oriented cycle needs at least 2 edges, got {edges}"
                )));
            }
            edges - 1
        }
    };
    if m % 2 == 0 {
        return Ok(Rational::zero());
    }
    let magnitude = Rational::new(euler_zigzag(m), factorial(m));
    let path_value = if ((m - 1) / 2) % 2 == 0 {
        magnitude
    } else {
        -magnitude
    };
    Ok(match kind {
        PathOrCycle::Path => path_value,
        PathOrCycle::Cycle => -path_value,
    })
}

/// `B(C_m) = −2^m B_m / m!` for even `m ≥ 2`.
pub fn break_sum_cycle(m: usize) -> Result<Rational> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "cycle breaking sums are defined here for even m >= 2, got {m}"
        )));
    }
    let scale = Rational::new(BigInt::one() << m, factorial(m));
    Ok(-(scale * bernoulli(m)?))
}

/// `B(C_m)` from the composition form: the unbroken cycle plus, for each
/// `r`, `m/r` times the sum over ordered compositions `m_1 + ⋯ + m_r = m` of
/// `Π A(P_{m_i})`, each path's average sign computed by brute force.
pub fn break_sum_cycle_by_compositions(m: usize) -> Result<Rational> {
    if m < 2 || m > MAX_BRUTE_VERTICES - 1 {
        return Err(Error::InvalidParameter(format!(
            "composition route supports 2 <= m <= {}, got {m}",
            MAX_BRUTE_VERTICES - 1
        )));
    }
    let path_signs: Vec<Rational> = (0..=m)
        .map(|len| {
            if len == 0 {
                Ok(Rational::one())
            } else {
                average_sign(&DirectedGraph::path_with_edges(len)?)
            }
        })
        .collect::<Result<_>>()?;
    let unbroken = average_sign(&DirectedGraph::cycle_with_edges(m)?)?;
    let mut total = if m % 2 == 0 { unbroken } else { -unbroken };
    for r in 1..=m {
        let mut compositions = Rational::zero();
        for_each_composition(m, r, &mut |parts| {
            compositions += parts
                .iter()
                .fold(Rational::one(), |acc, &p| acc * &path_signs[p]);
        });
        // r broken vertices leave v = m + r
        let sign = if (m + r) % 2 == 0 { 1 } else { -1 };
        total += Rational::new(BigInt::from(sign * m as i64), BigInt::from(r)) * compositions;
    }
    Ok(total)
}

fn for_each_composition(total: usize, parts: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(remaining: usize, left: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            if remaining == 0 {
                f(acc);
            }
            return;
        }
        for p in 1..=remaining.saturating_sub(left - 1) {
            acc.push(p);
            rec(remaining - p, left - 1, acc, f);
            acc.pop();
        }
    }
    rec(total, parts, &mut Vec::with_capacity(parts), f);
}

/// Definitional breaking sum of a 2-regular directed multigraph: enumerate
/// every subset of vertices to break, evaluate `A` of the broken graph as a
/// product over components, and sum with sign `(−1)^{v}`.
pub fn break_sum(graph: &DirectedGraph) -> Result<Rational> {
    let v = graph.num_vertices();
    if v > MAX_BREAK_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for breaking enumeration",
            value: v,
            limit: MAX_BREAK_VERTICES,
        });
    }
    // incident edge-ends per vertex: (edge index, is_head)
    let mut ends: Vec<Vec<(usize, bool)>> = vec![Vec::new(); v + 1];
    for (idx, &(a, b)) in graph.edges().iter().enumerate() {
        if a == b {
            return Err(Error::InvalidParameter(
                "self-loops cannot be broken".into(),
            ));
        }
        ends[a].push((idx, false));
        ends[b].push((idx, true));
    }
    if ends[1..].iter().any(|e| e.len() != 2) {
        return Err(Error::InvalidParameter(
            "breaking sums need a 2-regular graph".into(),
        ));
    }
    let mut total = Rational::zero();
    for mask in 0u32..(1 << v) {
        let mut edges = graph.edges().to_vec();
        let mut next_label = v;
        for vertex in 1..=v {
            if mask & (1 << (vertex - 1)) != 0 {
                // detach the second edge-end onto a fresh vertex
                next_label += 1;
                let (idx, is_head) = ends[vertex][1];
                if is_head {
                    edges[idx].1 = next_label;
                } else {
                    edges[idx].0 = next_label;
                }
            }
        }
        let broken = DirectedGraph::new(next_label, edges)?;
        let a = average_sign_by_components(&broken)?;
        if next_label % 2 == 0 {
            total += a;
        } else {
            total -= a;
        }
    }
    Ok(total)
}

/// `G_σ`: vertices `1..=k`, one edge `{i, σ(i)}` per point directed from the
/// smaller to the larger label. Fixed points are rejected.
pub fn cycle_graph_of(sigma: &Permutation) -> Result<DirectedGraph> {
    let k = sigma.size();
    let mut edges = Vec::with_capacity(k);
    for i in 0..k {
        let j = sigma.apply(i);
        if i == j {
            return Err(Error::InvalidParameter(format!(
                "fixed point {i} would need a self-loop"
            )));
        }
        edges.push((i.min(j) + 1, i.max(j) + 1));
    }
    DirectedGraph::new(k, edges)
}

/// Number of points with `i > σ(i)`.
pub fn deficiencies(sigma: &Permutation) -> usize {
    (0..sigma.size()).filter(|&i| i > sigma.apply(i)).count()
}

/// `B(G_σ) = Π_{γ} (−1)^{def(γ)} B(C_{|γ|})` over the cycles of `σ`.
///
/// Odd cycles contribute zero: their graphs have an odd number of edges, so
/// every breaking has average sign zero. Fixed points fall under the same rule.
pub fn break_sum_general(sigma: &Permutation) -> Result<Rational> {
    let k = sigma.size();
    if k > MAX_BREAK_VERTICES {
        return Err(Error::TooLarge {
            what: "permutation size for breaking sums",
            value: k,
            limit: MAX_BREAK_VERTICES,
        });
    }
    let mut seen = vec![false; k];
    let mut product = Rational::one();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut def = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            let y = sigma.apply(x);
            if x > y {
                def += 1;
            }
            len += 1;
            x = y;
        }
        if len % 2 == 1 {
            return Ok(Rational::zero());
        }
        let b = break_sum_cycle(len)?;
        product *= if def % 2 == 0 { b } else { -b };
    }
    Ok(product)
}
