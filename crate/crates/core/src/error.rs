use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field GF({p}^{m}) exceeds the table-backed limit of 2^20 elements")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("no modulus available for GF({p}^{m})")]
    NoModulus { p: u32, m: u32 },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("malformed modulus data at line {line}: {reason}")]
    ModulusData { line: usize, reason: String },
    #[error("cannot read modulus data file {path}: {reason}")]
    ModulusFile { path: String, reason: String },
    #[error("degree {sub} does not divide degree {ext}")]
    DegreeMismatch { sub: u32, ext: u32 },
    #[error("characteristic {sub} differs from {ext}")]
    CharacteristicMismatch { sub: u32, ext: u32 },
    #[error("{0} is not a perfect square")]
    NotSquare(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid semigroup generators: {0}")]
    InvalidGenerators(String),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(u64),
    #[error("precision {precision} exhausted before {wanted} orders were found")]
    PrecisionExhausted { precision: usize, wanted: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
