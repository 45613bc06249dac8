//! Writhe of permutations.
//!
//! The writhe of `π ∈ S_{2n+1}` is the circular analogue of the inversion
//! number: `w(π) = Σ_{i ∈ Z_{2n+1}} Σ_{j=1}^{n} sign(π(i+j) − π(i))`.
//! This crate computes it (quadratically and in `O(N log N)`), derives its
//! exact finite-`n` and limiting moments in rational arithmetic, evaluates and
//! samples the limit law of `w/n`, and exposes the circular rank-correlation
//! family the writhe belongs to.

pub mod bench;
pub mod corr;
pub mod error;
pub mod fast;
pub mod graph;
pub mod limit;
pub mod mc;
pub mod moments;
pub mod perm;
pub mod stats;

pub use error::{Error, Result};
pub use fast::{bialt_fast, writhe_fast, FastConfig};
pub use graph::{inv_graphical, DirectedGraph, GraphKind};
pub use limit::SampleStream;
pub use perm::{halve_map, InversionVariant, Permutation, Side};
