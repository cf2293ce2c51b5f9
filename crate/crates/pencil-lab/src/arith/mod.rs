//! Exact arithmetic kernel: fields, polynomials, gcds, resultants,
//! factorization over Q, root isolation and number fields.

pub mod bpoly;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod modular;
pub mod nf;
pub mod nffactor;
pub mod residue;
pub mod resultant;
pub mod roots;
pub mod upoly;

pub use bpoly::BPoly;
pub use field::{Field, Fp, Q};
pub use nf::{Nf, NumberField, RatFunc};
pub use upoly::UPoly;
