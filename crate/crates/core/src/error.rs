use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a generator of the multiplicative group of F_{q}")]
    GeneratorError { q: u64 },

    #[error("character of order {p} undefined: {p} does not divide {q} - 1")]
    CharacterUndefined { p: u64, q: u64 },

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("rational prime {0} divides the discriminant (ramified or index prime)")]
    RamifiedOrIndexPrime(u64),

    #[error("rational prime {0} divides the index [O_F : Z[theta]]")]
    IndexPrime(u64),

    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("E(N) contains nontrivial torsion of order {order} divisible by p = {p}")]
    TorsionObstruction { order: u64, p: u64 },

    #[error("principal ideal search inconclusive: {0}")]
    Inconclusive(String),

    #[error("scan budget exhausted: reached rank {reached}, expected {expected}")]
    BudgetShortfall { reached: usize, expected: usize },

    #[error("ideal is not coprime to the modulus")]
    NotCoprime,

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("validation failed: {0}")]
    ValidationError(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
