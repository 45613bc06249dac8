//! The limit law `W` of the normalised writhe `w/n`.
//!
//! `W` has characteristic function `Π_{n≥1} sech(2t/(πn))`; this module
//! samples it from its series representations, evaluates the characteristic
//! function, and inverts it numerically.

mod cf;
mod density;
mod quad;
mod sampler;
mod special;
mod stream;

pub use cf::{cf_derivative_at_zero, cf_w, cf_w_limit};
pub use density::{
    cdf_w, cf_cutoff, pdf_w, quantile_w, tail_rate_estimate, two_sided_tail, LimitTable,
};
pub use quad::{integrate, Quadrature};
pub use sampler::{
    laplace_truncated_variance, sample_sech, sample_w, sample_w_laplace, sech_cdf,
    sech_quantile, sech_tail_variance, TailMode, TruncationPolicy,
};
pub use special::{hurwitz_zeta, inverse_square_tail};
pub use stream::SampleStream;
