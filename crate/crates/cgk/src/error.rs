use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error("factorization budget exceeded on cofactor {0}")]
    FactorizationTimeout(u128),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(u128, u128),
    #[error("base does not generate the target element")]
    NotGenerator,
    #[error("moduli are not pairwise coprime")]
    ModuliNotCoprime,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{d} is not an acting divisor of {n}")]
    InvalidDivisor { d: String, n: String },
    #[error("{m} is not an acting group order for divisor {d} of {n}")]
    InvalidActingOrder { m: u128, d: String, n: String },
    #[error("cluster is not permissible: {0}")]
    NotPermissible(String),
    #[error("clusters belong to different enumeration contexts")]
    ContextMismatch,
    #[error("no automorphism of order {p}^{e} modulo {q}^{m}")]
    ExponentTooLarge { p: u128, e: u32, q: u128, m: u32 },
    #[error("invalid metacyclic parameters: {0}")]
    InvalidParams(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("group id {i} out of range for order {n}: count is {count}")]
    IdOutOfRange { n: String, i: u128, count: u128 },
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("invalid permutation input: {0}")]
    InvalidPermutation(String),
    #[error("not a group with cyclic Sylow subgroups: {0}")]
    NotCGroup(String),
    #[error("sampling budget exhausted before a suitable element was found")]
    SamplingBudgetExhausted,
    #[error("order {0} exceeds the oracle bound {1}")]
    BoundExceeded(u64, u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
