use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use super::spec::{filters_text, parse_filters, Filter, RankKind};
use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::univar::TwistPoly;

/// A contiguous range of lexicographic point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardRange {
    pub start: u64,
    pub end: u64,
}

/// Aggregated counts; independent of sharding and of wall time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub field: FieldSpec,
    pub m: usize,
    pub provider_id: String,
    pub rank_kind: RankKind,
    pub filters: BTreeSet<Filter>,
    /// Points passing the filters.
    pub enumerated: u64,
    /// `i -> #{rank >= i}` for the requested thresholds.
    pub counts: BTreeMap<usize, u64>,
    /// `rank -> #points`.
    pub histogram: BTreeMap<u32, u64>,
    pub manifest: Vec<ShardRange>,
    /// Set when only shift-orbit representatives were evaluated.
    pub orbit_representatives: Option<u64>,
}

/// A census together with its run metadata.
#[derive(Clone, Debug)]
pub struct CensusRun {
    pub result: CensusResult,
    pub elapsed: Duration,
    /// Points at or above the emit threshold, in enumeration order.
    pub hits: Vec<(TwistPoly, u32)>,
}

impl CensusResult {
    pub fn count(&self, i: usize) -> u64 {
        self.histogram
            .iter()
            .filter(|(&r, _)| r as usize >= i)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("field: {}\n", self.field));
        s.push_str(&format!("m: {}\n", self.m));
        s.push_str(&format!("provider: {}\n", self.provider_id));
        s.push_str(&format!("rank-kind: {}\n", self.rank_kind));
        s.push_str(&format!("filters: {}\n", filters_text(&self.filters)));
        s.push_str(&format!("points: {}\n", self.enumerated));
        for (i, c) in &self.counts {
            s.push_str(&format!("count: {i} {c}\n"));
        }
        for (r, c) in &self.histogram {
            s.push_str(&format!("hist: {r} {c}\n"));
        }
        for sh in &self.manifest {
            s.push_str(&format!("shard: {} {}\n", sh.start, sh.end));
        }
        if let Some(n) = self.orbit_representatives {
            s.push_str(&format!("orbits: {n}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut m = None;
        let mut provider_id = None;
        let mut rank_kind = None;
        let mut filters = None;
        let mut enumerated = None;
        let mut counts = BTreeMap::new();
        let mut histogram = BTreeMap::new();
        let mut manifest = Vec::new();
        let mut orbit_representatives = None;
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, format!("expected 'key: value', got '{line}'")))?;
            let value = value.trim();
            let int = |s: &str| -> Result<u64> {
                s.parse().map_err(|_| Error::parse(line_no, format!("'{s}' is not an integer")))
            };
            let pair = || -> Result<(u64, u64)> {
                let (a, b) = value
                    .split_once(' ')
                    .ok_or_else(|| Error::parse(line_no, format!("expected two integers, got '{value}'")))?;
                Ok((int(a.trim())?, int(b.trim())?))
            };
            match key.trim() {
                "field" => field = Some(FieldSpec::from_tag(value)?),
                "m" => m = Some(int(value)? as usize),
                "provider" => provider_id = Some(value.to_string()),
                "rank-kind" => rank_kind = Some(value.parse()?),
                "filters" => filters = Some(parse_filters(value)?),
                "points" => enumerated = Some(int(value)?),
                "count" => {
                    let (i, c) = pair()?;
                    counts.insert(i as usize, c);
                }
                "hist" => {
                    let (r, c) = pair()?;
                    histogram.insert(r as u32, c);
                }
                "shard" => {
                    let (start, end) = pair()?;
                    manifest.push(ShardRange { start, end });
                }
                "orbits" => orbit_representatives = Some(int(value)?),
                other => return Err(Error::parse(line_no, format!("unknown census field '{other}'"))),
            }
        }
        let missing = |what: &str| Error::parse(0, format!("census text lacks '{what}'"));
        Ok(CensusResult {
            field: field.ok_or_else(|| missing("field"))?,
            m: m.ok_or_else(|| missing("m"))?,
            provider_id: provider_id.ok_or_else(|| missing("provider"))?,
            rank_kind: rank_kind.ok_or_else(|| missing("rank-kind"))?,
            filters: filters.ok_or_else(|| missing("filters"))?,
            enumerated: enumerated.ok_or_else(|| missing("points"))?,
            counts,
            histogram,
            manifest,
            orbit_representatives,
        })
    }

    /// One row per threshold.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        w.write_record(["q", "m", "provider", "rank_kind", "filters", "i", "count", "points", "coset"])
            .map_err(io)?;
        for (i, c) in &self.counts {
            w.write_record([
                self.field.order().to_string(),
                self.m.to_string(),
                self.provider_id.clone(),
                self.rank_kind.to_string(),
                filters_text(&self.filters),
                i.to_string(),
                c.to_string(),
                self.enumerated.to_string(),
                // coset labels are not computable yet
                String::new(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// One JSON object per point: `{"twist": "F3:1,0,2", "rank": 2}`.
pub fn hits_jsonl(hits: &[(TwistPoly, u32)]) -> String {
    hits.iter()
        .map(|(p, r)| format!("{}\n", serde_json::json!({ "twist": p.to_string(), "rank": r })))
        .collect()
}
