//! Ideals of `QQ[a0, ..., am]`: Gröbner bases, Hilbert data, radical
//! membership, and the ideals of the resultantal varieties `X(m, i)`.

pub mod gb;
pub mod handle;
pub mod hilbert;
pub mod mono;
pub mod report;

pub use gb::{Engine, GbCoeffs, IntCoeffs, PrimeCoeffs, RatCoeffs};
pub use handle::{ideal_nesting_check, variety_ideal, variety_window, IdealHandle, DEFAULT_KAPPA_MAX};
pub use hilbert::{hilbert_numerator, HilbertData};
pub use mono::{Mono, TermOrder};
pub use report::{expected_degree, VarietyReport};
