use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} out of range 1..={1}")]
    DegreeOutOfRange(u32, u32),
    #[error("field order {p}^{h} exceeds the ceiling {ceiling}")]
    CeilingExceeded { p: u32, h: u32, ceiling: u32 },
    #[error("modulus is not irreducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("bad field specification {0:?}")]
    FieldSpec(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation requires q {0}")]
    Parity(&'static str),
    #[error("matrix is singular")]
    Singular,
    #[error("all generators are zero")]
    EmptySpan,
    #[error("point has rank {0}, expected 2")]
    RankNot2(u8),
    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no parameters satisfy {0} over GF({1})")]
    NoParameters(&'static str, u32),
    #[error("representative {0} is not defined for q = {1}")]
    NotDefined(String, u32),
    #[error("matrix {0} not symmetric")]
    NotSymmetric(usize),
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("matrix {0} has an entry >= q")]
    EntryOutOfRange(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("classification failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
