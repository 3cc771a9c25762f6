//! Exact coefficient rings and sparse multivariate polynomial arithmetic.

pub mod field;
pub mod lpoly;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod text;

pub use field::{FieldSpec, FqElement};
pub use lpoly::LPoly;
pub use monomial::Monomial;
pub use poly::{FqPoly, MultiPoly, QPoly, Var, ZPoly};
pub use ring::{CoeffRing, Integers, Rationals, Scalar};
pub use text::{format_poly, parse_poly};
