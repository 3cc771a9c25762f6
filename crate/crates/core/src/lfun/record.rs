use std::fmt::Write as _;

use super::engine::{analytic_rank, l_polynomial, rank_at_infinity, specialize_l};
use super::provider::MatrixProvider;
use crate::algebra::{FieldSpec, Integers, LPoly};
use crate::error::{Error, Result};
use crate::univar::TwistPoly;

/// Ranks of one twist under one provider.
#[derive(Clone, Debug, PartialEq)]
pub struct RankRecord {
    /// Padded to the provider's `m`.
    pub twist: TwistPoly,
    pub provider_id: String,
    pub k: usize,
    pub l: LPoly<FieldSpec>,
    pub rank: u32,
    pub rank_inf: usize,
}

impl RankRecord {
    pub fn compute(provider: &MatrixProvider, p: &TwistPoly) -> Result<Self> {
        let l = specialize_l(provider, p)?;
        let twist = super::engine::align_twist(provider, p)?;
        Ok(RankRecord {
            rank: analytic_rank(&l)?,
            rank_inf: rank_at_infinity(&l, provider.k)?,
            twist,
            provider_id: provider.provider_id(),
            k: provider.k,
            l,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "twist: {}", self.twist).unwrap();
        writeln!(s, "provider: {}", self.provider_id).unwrap();
        writeln!(s, "k: {}", self.k).unwrap();
        writeln!(s, "L: {}", self.l).unwrap();
        writeln!(s, "r: {}", self.rank).unwrap();
        writeln!(s, "r_inf: {}", self.rank_inf).unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(no + 1, format!("expected 'key: value', got '{line}'")))?;
            fields.insert(key.trim().to_string(), (no + 1, value.trim().to_string()));
        }
        let get = |k: &str| {
            fields
                .get(k)
                .cloned()
                .ok_or_else(|| Error::parse(1, format!("rank record lacks '{k}'")))
        };
        let int = |k: &str| -> Result<usize> {
            let (no, v) = get(k)?;
            v.parse().map_err(|_| Error::parse(no, format!("{k} must be an integer")))
        };
        let twist: TwistPoly = get("twist")?.1.parse()?;
        let l = LPoly::parse(twist.field().clone(), twist.m() + 2, &get("L")?.1)?;
        Ok(RankRecord {
            provider_id: get("provider")?.1,
            k: int("k")?,
            rank: int("r")? as u32,
            rank_inf: int("r_inf")?,
            twist,
            l,
        })
    }
}

/// `L` over `ZZ[a, t]`, or specialized at a twist over `F_q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LCoefficients {
    Symbolic(LPoly<Integers>),
    Specialized(TwistPoly, LPoly<FieldSpec>),
}

/// An L-polynomial with the provider it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolyRecord {
    pub provider_id: String,
    pub m: usize,
    pub k: usize,
    pub l: LCoefficients,
}

impl LPolyRecord {
    pub fn symbolic(provider: &MatrixProvider) -> Self {
        LPolyRecord {
            provider_id: provider.provider_id(),
            m: provider.m,
            k: provider.k,
            l: LCoefficients::Symbolic(l_polynomial(provider)),
        }
    }

    pub fn specialized(provider: &MatrixProvider, p: &TwistPoly) -> Result<Self> {
        let twist = super::engine::align_twist(provider, p)?;
        Ok(LPolyRecord {
            provider_id: provider.provider_id(),
            m: provider.m,
            k: provider.k,
            l: LCoefficients::Specialized(twist, specialize_l(provider, p)?),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "provider: {}", self.provider_id).unwrap();
        writeln!(s, "m: {}", self.m).unwrap();
        writeln!(s, "k: {}", self.k).unwrap();
        match &self.l {
            LCoefficients::Symbolic(l) => writeln!(s, "L: {l}").unwrap(),
            LCoefficients::Specialized(p, l) => {
                writeln!(s, "twist: {p}").unwrap();
                writeln!(s, "L: {l}").unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(no + 1, format!("expected 'key: value', got '{line}'")))?;
            fields.insert(key.trim().to_string(), (no + 1, value.trim().to_string()));
        }
        let get = |k: &str| {
            fields
                .get(k)
                .cloned()
                .ok_or_else(|| Error::parse(1, format!("L-polynomial record lacks '{k}'")))
        };
        let int = |k: &str| -> Result<usize> {
            let (no, v) = get(k)?;
            v.parse().map_err(|_| Error::parse(no, format!("{k} must be an integer")))
        };
        let m = int("m")?;
        let l_text = get("L")?.1;
        let l = match fields.get("twist") {
            None => LCoefficients::Symbolic(LPoly::parse(Integers, m + 2, &l_text)?),
            Some((_, t)) => {
                let twist: TwistPoly = t.parse()?;
                let l = LPoly::parse(twist.field().clone(), m + 2, &l_text)?;
                LCoefficients::Specialized(twist, l)
            }
        };
        Ok(LPolyRecord {
            provider_id: get("provider")?.1,
            m,
            k: int("k")?,
            l,
        })
    }
}
