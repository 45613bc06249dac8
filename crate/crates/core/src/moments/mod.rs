//! Exact rational machinery for writhe moments.
//!
//! Nothing in this module touches floating point. Values leave as
//! [`Rational`] and are converted by callers.

mod finite;
mod limit;
mod numbers;
mod runs;
mod sign;

pub use finite::{eval_poly, exact_moment_poly, moment_enumeration, writhe_distribution};
pub use limit::{lambda_m, mu_k, mu_k_recurrence, MAX_MOMENT_ORDER};
pub use numbers::{bernoulli, euler_zigzag, eulerian};
pub use runs::{parity_count, runs_z, runs_z_closed, ParityVector};
pub use sign::{
    average_sign, average_sign_closed, break_sum, break_sum_cycle,
    break_sum_cycle_by_compositions, break_sum_general, cycle_graph_of, deficiencies,
    PathOrCycle, MAX_BRUTE_VERTICES,
};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Lossy conversion for reporting.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
