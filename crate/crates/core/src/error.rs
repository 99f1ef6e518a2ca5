use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {q} exceeds the cap of {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("extension degree {0} is outside 1..=3")]
    BadDegree(u32),
    #[error("no irreducible polynomial of degree {e} over GF({p})")]
    NoIrreducible { p: u32, e: u32 },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {value} is not in GF({q})")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("ragged matrix: expected rows of length {expected}, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("subspace is not contained in the given subspace")]
    NotContained,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("matrix is singular")]
    Singular,
    #[error("form is degenerate")]
    Degenerate,
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("not a complementary pair")]
    NotComplementary,
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
