use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotBijection(String),

    #[error("size {size} has the wrong parity: {expected} size required")]
    SizeParity { size: usize, expected: &'static str },

    #[error("size mismatch: permutation has {perm} points, graph has {graph} vertices")]
    SizeMismatch { perm: usize, graph: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} exceeds the brute-force limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("kernel is undefined at t = {0}")]
    KernelDiscontinuity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_odd(size: usize) -> Result<()> {
    if size % 2 == 1 {
        Ok(())
    } else {
        Err(Error::SizeParity {
            size,
            expected: "odd",
        })
    }
}

pub(crate) fn require_even(size: usize) -> Result<()> {
    if size % 2 == 0 {
        Ok(())
    } else {
        Err(Error::SizeParity {
            size,
            expected: "even",
        })
    }
}
