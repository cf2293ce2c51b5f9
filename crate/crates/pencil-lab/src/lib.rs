//! Exact invariants of plane polynomial pencils `f − c·w` over Q and its
//! algebraic closure.

pub mod absfactor;
pub mod arith;
pub mod corpus;
pub mod error;
pub mod intersect;
pub mod io;
pub mod pencil;
pub mod rank;
pub mod verify;

pub use error::{Error, Result};
