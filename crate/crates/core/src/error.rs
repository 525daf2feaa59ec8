use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    InvalidModulus,

    /// A brute-force evaluator was asked to iterate past its cap.
    #[error("brute-force range exceeded: {requested} iterations requested, cap is {cap}")]
    OracleRange { requested: BigUint, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// Trial division and primality testing could not finish the job.
    /// `partial` holds the prime factors found so far; `cofactor` is what remains.
    #[error("incomplete factorization: {cofactor} has no factor below the trial bound and is not prime")]
    IncompleteFactorization {
        partial: Vec<(BigUint, u32)>,
        cofactor: BigUint,
    },

    #[error("resource limit: {0}")]
    Resource(String),

    /// A proven identity failed to hold. Always a bug upstream.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("records file: {0}")]
    Records(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
