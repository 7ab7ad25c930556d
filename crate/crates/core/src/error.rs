use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q = {at}: denominator {denominator} vanishes")]
    Pole { at: String, denominator: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("sequence too short: need {needed} values, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("p-adic precision exhausted")]
    PrecisionExhausted,

    #[error("p-adic operands have different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),

    #[error("invalid q seed: {0}")]
    InvalidSeed(String),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("range too large: {requested} exceeds the limit {limit}")]
    RangeTooLarge { requested: usize, limit: usize },
}
