// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field order {p}^{e} exceeds 2^16")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("modulus {0:?} is not irreducible")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of GF({q})")]
    NotAnElement { value: u32, q: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("multiset is not an information set")]
    NotInformationSet,
    #[error("straggler budget S={s} outside (0, {dmin})")]
    StragglerBudget { s: usize, dmin: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("greedy search aborted: {0}")]
    Abort(String),
    #[error("privacy certificate failed: {0}")]
    Certificate(String),
    #[error("instance too large for exhaustive audit: {0}")]
    TooLarge(String),
    #[error("decoding failed: {0}")]
    Decode(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
