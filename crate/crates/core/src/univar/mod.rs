//! Univariate polynomial algebra over `F_q`: twist representatives `P(θ)`
//! and specialized L-coefficients in `F_q[t]`.

pub mod factor;
pub mod poly;
pub mod twist;

pub use factor::{factorize, is_powerfree_poly, squarefree_decomposition, Factorization};
pub use poly::{uni_gcd, UniPoly};
pub use twist::{is_shift_stable, twist_equivalent, TwistPoly};
