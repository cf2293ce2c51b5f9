//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("characteristic {p} is too small for this operation (needs > {bound})")]
    CharacteristicTooSmall { p: u64, bound: u64 },
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error("input polynomial is reducible")]
    Reducible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials share a common factor")]
    CommonFactor,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("shear instability after {0} retries")]
    ShearInstability(usize),
    #[error("Newton-Puiseux depth bound {0} exceeded")]
    DepthExceeded(usize),
    #[error("infinite intersection multiplicity where a finite value is required")]
    Infinite,
    #[error("degenerate ideal: the locus is the whole line")]
    Degenerate,
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
