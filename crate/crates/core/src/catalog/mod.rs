//! Append-only JSONL catalog of results and CSV reports over it.

use std::collections::HashSet;
use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::census::CensusResult;
use crate::error::{Error, Result};
use crate::ideal::VarietyReport;
use crate::lfun::{LCoefficients, LPolyRecord, RankRecord};

pub const TOOL_VERSION: &str = concat!("carlitz ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Lpoly,
    RankRecord,
    Census,
    IdealReport,
}

impl EntryKind {
    pub const ALL: [EntryKind; 4] = [EntryKind::Lpoly, EntryKind::RankRecord, EntryKind::Census, EntryKind::IdealReport];

    pub fn name(self) -> &'static str {
        match self {
            EntryKind::Lpoly => "lpoly",
            EntryKind::RankRecord => "rank-record",
            EntryKind::Census => "census",
            EntryKind::IdealReport => "ideal-report",
        }
    }
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EntryKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown entry kind '{s}'")))
    }
}

/// A parsed payload.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Lpoly(LPolyRecord),
    Rank(RankRecord),
    Census(CensusResult),
    Ideal(VarietyReport),
}

impl Payload {
    pub fn kind(&self) -> EntryKind {
        match self {
            Payload::Lpoly(_) => EntryKind::Lpoly,
            Payload::Rank(_) => EntryKind::RankRecord,
            Payload::Census(_) => EntryKind::Census,
            Payload::Ideal(_) => EntryKind::IdealReport,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Payload::Lpoly(r) => r.to_text(),
            Payload::Rank(r) => r.to_text(),
            Payload::Census(r) => r.to_text(),
            Payload::Ideal(r) => r.to_text(),
        }
    }

    pub fn parse(kind: EntryKind, text: &str) -> Result<Self> {
        Ok(match kind {
            EntryKind::Lpoly => Payload::Lpoly(LPolyRecord::parse(text)?),
            EntryKind::RankRecord => Payload::Rank(RankRecord::parse(text)?),
            EntryKind::Census => Payload::Census(CensusResult::parse(text)?),
            EntryKind::IdealReport => Payload::Ideal(VarietyReport::parse(text)?),
        })
    }
}

/// Where a result came from. Every number is an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub provider_id: Option<String>,
    pub window: Option<String>,
    pub term_order: Option<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Seconds since the Unix epoch; excluded from the content hash.
    pub timestamp: u64,
}

impl Provenance {
    pub fn now() -> Self {
        Provenance {
            provider_id: None,
            window: None,
            term_order: None,
            seed: None,
            tool_version: TOOL_VERSION.into(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Serialize)]
struct HashInput<'a> {
    kind: EntryKind,
    payload: &'a str,
    provider_id: &'a Option<String>,
    window: &'a Option<String>,
    term_order: &'a Option<String>,
    seed: Option<u64>,
    tool_version: &'a str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub kind: EntryKind,
    pub payload: String,
    pub provenance: Provenance,
    pub hash: String,
}

impl CatalogEntry {
    pub fn new(payload: &Payload, provenance: Provenance) -> Self {
        let kind = payload.kind();
        let payload = payload.to_text();
        let hash = content_hash(kind, &payload, &provenance);
        CatalogEntry {
            kind,
            payload,
            provenance,
            hash,
        }
    }

    /// Checks the hash and that the payload parses and re-renders to the
    /// same bytes.
    pub fn verify(&self) -> Result<Payload> {
        let expected = content_hash(self.kind, &self.payload, &self.provenance);
        if expected != self.hash {
            return Err(Error::InvalidInput(format!("content hash {} does not match {expected}", self.hash)));
        }
        let parsed = Payload::parse(self.kind, &self.payload)?;
        if parsed.to_text() != self.payload {
            return Err(Error::InvalidInput("payload does not round-trip".into()));
        }
        Ok(parsed)
    }
}

/// sha256 over kind, payload and provenance without the timestamp.
pub fn content_hash(kind: EntryKind, payload: &str, prov: &Provenance) -> String {
    let input = HashInput {
        kind,
        payload,
        provider_id: &prov.provider_id,
        window: &prov.window,
        term_order: &prov.term_order,
        seed: prov.seed,
        tool_version: &prov.tool_version,
    };
    let json = serde_json::to_string(&input).expect("plain data serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

// serializes appends within the process
static WRITER: Mutex<()> = Mutex::new(());

/// Valid entries of a catalog file plus warnings for skipped lines.
#[derive(Debug, Default)]
pub struct CatalogContents {
    pub entries: Vec<(CatalogEntry, Payload)>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    path: PathBuf,
}

impl Catalog {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Catalog { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one line; existing bytes are never touched.
    pub fn append(&self, entry: &CatalogEntry) -> Result<()> {
        let mut line = serde_json::to_string(entry).map_err(|e| Error::InvalidInput(format!("catalog entry: {e}")))?;
        line.push('\n');
        let _guard = WRITER.lock().unwrap_or_else(|e| e.into_inner());
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        Ok(())
    }

    /// Reads all entries; a missing file is an empty catalog.
    pub fn read(&self) -> Result<CatalogContents> {
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut out = CatalogContents::default();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: CatalogEntry = match serde_json::from_str(line) {
                Ok(e) => e,
                Err(e) => {
                    out.warnings.push(format!("line {}: unreadable entry: {e}", n + 1));
                    continue;
                }
            };
            match entry.verify() {
                Ok(p) => out.entries.push((entry, p)),
                Err(e) => out.warnings.push(format!("line {}: corrupt {} entry: {e}", n + 1, entry.kind)),
            }
        }
        Ok(out)
    }
}

/// Filter for [`report`]; `None` matches anything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub kind: Option<EntryKind>,
    pub q: Option<u32>,
    pub m: Option<usize>,
}

impl FromStr for Query {
    type Err = Error;

    /// `kind=census,q=3,m=4`; the empty string matches everything.
    fn from_str(s: &str) -> Result<Self> {
        let mut q = Query::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("query term '{part}' is not key=value")))?;
            let bad = || Error::InvalidInput(format!("bad value in query term '{part}'"));
            match k.trim() {
                "kind" => q.kind = Some(v.parse()?),
                "q" => q.q = Some(v.trim().parse().map_err(|_| bad())?),
                "m" => q.m = Some(v.trim().parse().map_err(|_| bad())?),
                other => return Err(Error::InvalidInput(format!("unknown query key '{other}'"))),
            }
        }
        Ok(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    m: usize,
    i: Option<usize>,
    twist: String,
    kind: EntryKind,
    q: Option<u32>,
    value: String,
    provider: String,
    hash: String,
}

fn rows(entry: &CatalogEntry, payload: &Payload) -> Vec<Row> {
    let row = |m, i, twist: String, q, value: String, provider: String| Row {
        m,
        i,
        twist,
        kind: entry.kind,
        q,
        value,
        provider,
        hash: entry.hash.clone(),
    };
    match payload {
        Payload::Census(c) => c
            .counts
            .iter()
            .map(|(&i, &n)| row(c.m, Some(i), String::new(), Some(c.field.order()), n.to_string(), c.provider_id.clone()))
            .collect(),
        Payload::Rank(r) => vec![row(
            r.twist.m(),
            None,
            r.twist.to_string(),
            Some(r.twist.field().order()),
            format!("r={} r_inf={}", r.rank, r.rank_inf),
            r.provider_id.clone(),
        )],
        Payload::Ideal(v) => vec![row(
            v.m,
            Some(v.i),
            String::new(),
            None,
            format!("degree={} ci={}", v.degree, v.complete_intersection),
            entry.provenance.provider_id.clone().unwrap_or_default(),
        )],
        Payload::Lpoly(l) => {
            let (twist, q, text) = match &l.l {
                LCoefficients::Symbolic(p) => (String::new(), None, p.to_text()),
                LCoefficients::Specialized(t, p) => (t.to_string(), Some(t.field().order()), p.to_text()),
            };
            vec![row(l.m, None, twist, q, text, l.provider_id.clone())]
        }
    }
}

/// A CSV table and the warnings raised while reading the catalog.
#[derive(Clone, Debug)]
pub struct Report {
    pub csv: String,
    pub rows: usize,
    pub warnings: Vec<String>,
}

impl Report {
    /// Whether corrupt entries were skipped.
    pub fn is_partial(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Filtered, deduplicated table sorted by `m`, then `i`, then twist.
pub fn report(catalog: &Catalog, query: &Query) -> Result<Report> {
    let contents = catalog.read()?;
    let mut seen = HashSet::new();
    let mut table: Vec<Row> = Vec::new();
    for (entry, payload) in &contents.entries {
        if !seen.insert(entry.hash.clone()) {
            continue;
        }
        if query.kind.is_some_and(|k| k != entry.kind) {
            continue;
        }
        for r in rows(entry, payload) {
            if query.q.is_some_and(|q| r.q != Some(q)) || query.m.is_some_and(|m| r.m != m) {
                continue;
            }
            table.push(r);
        }
    }
    table.sort();
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(["kind", "q", "m", "i", "twist", "value", "provider", "hash"])
        .map_err(csv_err)?;
    for r in &table {
        w.write_record([
            r.kind.name().to_string(),
            r.q.map(|q| q.to_string()).unwrap_or_default(),
            r.m.to_string(),
            r.i.map(|i| i.to_string()).unwrap_or_default(),
            r.twist.clone(),
            r.value.clone(),
            r.provider.clone(),
            r.hash.clone(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(Report {
        csv: String::from_utf8(bytes).expect("csv output is UTF-8"),
        rows: table.len(),
        warnings: contents.warnings,
    })
}
