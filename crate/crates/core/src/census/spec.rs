use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{FieldSpec, FqElement};
use crate::error::{Error, Result};
use crate::univar::{is_shift_stable, TwistPoly};

/// Point evaluations allowed when nothing else is configured.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CARLITZ_BUDGET";

/// The budget from the environment, or the default.
pub fn configured_budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV}='{v}' is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    /// No irreducible factor of multiplicity `>= q - 1`.
    Powerfree,
    Squarefree,
    ShiftStable,
    Monic,
}

impl Filter {
    pub const ALL: [Filter; 4] = [Filter::Powerfree, Filter::Squarefree, Filter::ShiftStable, Filter::Monic];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Powerfree => "powerfree",
            Filter::Squarefree => "squarefree",
            Filter::ShiftStable => "shift-stable",
            Filter::Monic => "monic",
        }
    }

    /// The zero polynomial fails every filter except shift stability.
    pub fn accepts(self, p: &TwistPoly) -> Result<bool> {
        let q = p.field().order();
        match self {
            Filter::Powerfree if p.is_zero() => Ok(false),
            Filter::Squarefree if p.is_zero() => Ok(false),
            Filter::Powerfree => p.is_powerfree(q - 1),
            Filter::Squarefree => p.is_powerfree(2),
            Filter::ShiftStable => Ok(is_shift_stable(p)),
            Filter::Monic => Ok(!p.is_zero() && p.is_monic()),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown filter '{s}'")))
    }
}

/// Renders a filter set as `a,b` or `none`.
pub fn filters_text(filters: &BTreeSet<Filter>) -> String {
    if filters.is_empty() {
        "none".into()
    } else {
        filters.iter().map(|f| f.name()).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_filters(s: &str) -> Result<BTreeSet<Filter>> {
    let s = s.trim();
    if s.is_empty() || s == "none" {
        return Ok(BTreeSet::new());
    }
    s.split(',').map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RankKind {
    /// Order of vanishing at `T = 1`.
    #[default]
    AtOne,
    /// `k - deg_T L`.
    AtInfinity,
}

impl RankKind {
    pub fn name(self) -> &'static str {
        match self {
            RankKind::AtOne => "at-one",
            RankKind::AtInfinity => "at-infinity",
        }
    }
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RankKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "at-one" => Ok(RankKind::AtOne),
            "at-infinity" => Ok(RankKind::AtInfinity),
            other => Err(Error::InvalidInput(format!("unknown rank kind '{other}'"))),
        }
    }
}

/// What to enumerate and how to aggregate it.
#[derive(Clone, Debug)]
pub struct CensusSpec {
    pub field: FieldSpec,
    pub m: usize,
    pub filters: BTreeSet<Filter>,
    pub rank_kind: RankKind,
    /// The `i` for which `#{rank >= i}` is reported.
    pub thresholds: Vec<usize>,
    pub shards: usize,
    pub budget: u64,
    /// Collect the points of rank at least this value.
    pub emit_threshold: Option<usize>,
}

impl CensusSpec {
    pub fn new(field: FieldSpec, m: usize, rank_kind: RankKind) -> Self {
        CensusSpec {
            field,
            m,
            filters: BTreeSet::new(),
            rank_kind,
            thresholds: Vec::new(),
            shards: 1,
            budget: DEFAULT_BUDGET,
            emit_threshold: None,
        }
    }

    pub fn with_filters(mut self, filters: impl IntoIterator<Item = Filter>) -> Self {
        self.filters = filters.into_iter().collect();
        self
    }

    pub fn with_thresholds(mut self, thresholds: impl IntoIterator<Item = usize>) -> Self {
        self.thresholds = thresholds.into_iter().collect();
        self.thresholds.sort_unstable();
        self.thresholds.dedup();
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_emit_threshold(mut self, i: usize) -> Self {
        self.emit_threshold = Some(i);
        self
    }

    /// `q^(m+1)`, saturating.
    pub fn num_points(&self) -> u128 {
        let exp = u32::try_from(self.m + 1).unwrap_or(u32::MAX);
        (self.field.order() as u128).checked_pow(exp).unwrap_or(u128::MAX)
    }

    /// The number of points, if it is within budget.
    pub fn check_budget(&self) -> Result<u64> {
        let n = self.num_points();
        if n <= self.budget as u128 {
            Ok(n as u64)
        } else {
            Err(Error::Budget {
                required: n,
                budget: self.budget as u128,
            })
        }
    }

    pub fn passes(&self, p: &TwistPoly) -> Result<bool> {
        for f in &self.filters {
            if !f.accepts(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The point with lexicographic index `n` in `(a_m, ..., a0)`.
    pub fn point(&self, mut n: u64) -> TwistPoly {
        let q = self.field.order() as u64;
        let coeffs = (0..=self.m)
            .map(|_| {
                let d = (n % q) as u32;
                n /= q;
                FqElement(d)
            })
            .collect();
        TwistPoly::new(self.field.clone(), coeffs).expect("residues in range")
    }

    /// Inverse of [`CensusSpec::point`].
    pub fn index(&self, p: &TwistPoly) -> u64 {
        let q = self.field.order() as u64;
        p.coeffs().iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }
}
