//! Matrix providers, `L_m = det(I_k - M T)`, its coefficients `H`, and the
//! two rank invariants of specialized L-polynomials.

pub mod det;
pub mod engine;
pub mod provider;
pub mod record;

pub use det::{RingElement, SquareMatrix};
pub use engine::{
    align_twist, analytic_rank, analytic_rank_at, assemble_h, extract_h, l_polynomial, rank_at_infinity,
    specialize_l, specialize_symbolic,
};
pub use provider::{build_k, load_provider, parse_provider, schur_provider, MatrixProvider, ProviderSource};
pub use record::{LCoefficients, LPolyRecord, RankRecord};
