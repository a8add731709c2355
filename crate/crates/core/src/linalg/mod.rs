//! Exact linear algebra over ℚ and GF(p).

pub mod field;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod sparse;

pub use field::{FieldSpec, Scalar};
pub use matrix::{LinalgError, Matrix};
pub use poly::Poly;
pub use rat::Rat;
