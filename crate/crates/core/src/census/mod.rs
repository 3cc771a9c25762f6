//! Exhaustive rank census over `F_q^(m+1)`.

pub mod eval;
pub mod result;
pub mod run;
pub mod spec;

pub use eval::PointEvaluator;
pub use result::{hits_jsonl, CensusResult, CensusRun, ShardRange};
pub use run::{
    census, census_consistency, nesting_census, shard_ranges, shift_orbit_reduce, shift_orbits, ConsistencyReport,
    NestingReport, Witness, DEFAULT_SHIFT_SAMPLE,
};
pub use spec::{configured_budget, filters_text, parse_filters, CensusSpec, Filter, RankKind, BUDGET_ENV, DEFAULT_BUDGET};
