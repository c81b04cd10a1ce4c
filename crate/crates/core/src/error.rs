use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: image {value} repeated or out of range at position {position}")]
    NotAPermutation { position: usize, value: usize },

    #[error("table is empty")]
    EmptyTable,

    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("entry out of range at ({row},{col}): {value}")]
    EntryOutOfRange { row: usize, col: usize, value: usize },

    #[error("index 0 is not a two-sided identity: witness x={x}")]
    IdentityViolation { x: usize },

    #[error("row {row} is not a bijection: value {value} repeated")]
    RowNotBijective { row: usize, value: usize },

    #[error("element {x} has no two-sided inverse")]
    NoInverse { x: usize },

    #[error("associativity fails at (x,y,z)=({x},{y},{z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a subgroup: {reason}")]
    NotSubgroup { reason: String },

    #[error("not a normal subgroup: conjugate of {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },

    #[error("not a left transversal: {reason}")]
    NotTransversal { reason: String },

    #[error("carrier of size {size} exceeds the limit {limit} for {what}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("not a transassociant: {reason}")]
    NotTransassociant { reason: String },

    #[error("external product condition {condition} violated at {witness}")]
    ExternalCondition { condition: String, witness: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
