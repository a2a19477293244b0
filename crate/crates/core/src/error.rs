use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relation contains a directed cycle through `{0}`")]
    Cycle(String),
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("invalid antichain: {0}")]
    InvalidAntichain(String),
    #[error("{what} exceeds the size limit ({size} > {limit})")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid deletion: {0}")]
    InvalidDeletion(String),
    #[error("partitions of different integers: {0} vs {1}")]
    MismatchedN(usize, usize),
    #[error("not an antichain in the refinement order: {0} and {1} are comparable")]
    NotAntichain(String, String),
    #[error("empty antichain")]
    Empty,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("blocker is not a union of fibers (shape {0})")]
    NotSymmetric(String),
    #[error("search budget exhausted: optimum lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("subspaces live in different ambient spaces")]
    MismatchedAmbient,
    #[error("structural identity violated: {0}")]
    StructureViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
