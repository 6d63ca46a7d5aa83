use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("order {0} is too small; need n >= 2")]
    OrderTooSmall(u64),
    #[error("NonDivisor: {d} does not divide {n}")]
    NonDivisor { n: u64, d: u64 },
    #[error("OutOfRange: divisor {d} must satisfy 1 <= d < {n}")]
    OutOfRange { n: u64, d: u64 },
    #[error("EmptyDivisorSet: a divisor set must be nonempty")]
    EmptyDivisorSet,
    #[error("malformed graph string {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("index j = {j} out of range for order {n}")]
    IndexOutOfRange { n: u64, j: u64 },
    #[error("{d0} is not a divisor of {n} coprime to its smallest prime")]
    InvalidChainBase { n: u64, d0: u64 },
    #[error("TooManyDivisors: n = {n} has {count} proper divisors, {subsets} subsets exceed the limit {limit}")]
    TooManyDivisors {
        n: u64,
        count: usize,
        subsets: u64,
        limit: u64,
    },
    #[error("order {0} is prime; there is no second minimal least eigenvalue")]
    PrimeOrder(u64),
}
