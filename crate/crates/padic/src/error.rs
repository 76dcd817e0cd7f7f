use thiserror::Error;

/// Errors raised by p-adic constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("mantissa must be a unit in [1, p^N) not divisible by p")]
    NotAUnit,

    #[error("precision must be at least one digit")]
    ZeroPrecision,

    #[error("division by a value indistinguishable from zero")]
    DivisionByZeroLike,

    #[error("insufficient precision to decide {0}")]
    InsufficientPrecision(&'static str),

    #[error("argument outside the domain of {0}")]
    OutOfDomain(&'static str),

    #[error("Hensel precondition |F(a0)| < |F'(a0)|^2 does not hold")]
    HenselPrecondition,

    #[error("polynomial and seed must be p-adic integers")]
    NotIntegral,

    #[error("Newton iteration did not converge; this is a bug")]
    NoConvergence,
}
