//! Exact L-polynomials of twisted Carlitz modules and the resultantal
//! varieties cut out by their coefficients.

pub mod algebra;
pub mod catalog;
pub mod census;
pub mod error;
pub mod ideal;
pub mod lfun;
pub mod univar;

pub use algebra::{FieldSpec, FqElement};
pub use error::{Error, Result};
