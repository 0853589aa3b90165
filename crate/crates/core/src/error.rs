use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{what} requires degree at least {min}, got {got}")]
    DegreeTooSmall {
        what: &'static str,
        min: usize,
        got: String,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("resultant is {0}, not a unit; no integral Bezout identity")]
    NotUnimodular(String),

    #[error("radical: residual factor {0} has no divisor in the table")]
    ResidualFactor(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("coprime search exhausted all {candidates} candidates")]
    SearchExhausted { candidates: u64 },

    #[error("oracle guard exceeded: {0}")]
    GuardExceeded(String),
}
