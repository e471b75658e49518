//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("required size {required} exceeds cap {cap}")]
    SizeCapExceeded { required: u128, cap: u128 },
    #[error("{r} does not divide {n}")]
    NotADivisor { r: usize, n: usize },
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("the zero polynomial has no degree indices")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    PreconditionViolated(std::borrow::Cow<'static, str>),
    #[error("no place certifies irreducibility of the Kummer equation: {0}")]
    IrreducibilityUnverified(String),
    #[error("invalid valuation profile: {0}")]
    ProfileInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
