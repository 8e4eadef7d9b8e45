use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic level {level} exceeds the configured bound {max}")]
    LevelOverflow { level: u64, max: u64 },
    #[error("Galois index {a} is not coprime to level {level}")]
    NotCoprime { a: i64, level: u64 },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("p = 2 is not supported")]
    EvenPrime,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision {have} is below the required {need}")]
    Precision { have: u32, need: u32 },
    #[error("element is not a principal unit")]
    NotPrincipalUnit,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus p^N does not fit in 64 bits (p = {p}, N = {n})")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("field size {0} exceeds the table bound")]
    FieldTooLarge(u64),
    #[error("generators do not close to a subgroup")]
    NotASubgroup,
    #[error("invalid group parameters: {0}")]
    BadGroup(String),
    #[error("subgroup does not contain the inertia subgroup")]
    RamifiedBase,
    #[error("virtual character has nonzero degree {0}")]
    NonzeroDegree(i64),
    #[error("class function is not a virtual character")]
    NotVirtual,
    #[error("degree-0 system has no integer solution")]
    Unsolvable,
    #[error("character is ramified")]
    Ramified,
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
