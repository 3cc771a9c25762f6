//! Matrix providers: the `k x k` matrices whose `det(I - M T)` is `L_m`.
//!
//! File format (line oriented, `#` starts a comment line):
//!
//! ```text
//! q: 3
//! m: 5
//! n: 1
//! k: 3
//! source: free-text citation of where the entries were transcribed from
//! entries:
//! a0 + t
//! ...            (k^2 polynomials, row-major, one per line)
//! ```
//!
//! `q: any` marks a field-agnostic provider; only `n = 0` may use it.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::det::SquareMatrix;
use crate::algebra::{format_poly, parse_poly, Integers, MultiPoly, Var, ZPoly};
use crate::error::{Error, Result};

pub const BUILTIN_SOURCE: &str = "builtin-schur-n0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProviderSource {
    BuiltinSchurN0,
    ExternalFile { citation: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixProvider {
    /// Field order the entries are meant for; `None` for the built-in
    /// provider, which is defined over `ZZ` and reduced into any field.
    pub q: Option<u32>,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub entries: SquareMatrix<ZPoly>,
    pub source: ProviderSource,
}

/// Matrix size `ceil((m + n) / (q - 1))` for `n >= 1`; for `n = 0` the size
/// `m` of the built-in Schur provider.
pub fn build_k(q: u64, m: usize, n: usize) -> Result<usize> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("q must be at least 2, got {q}")));
    }
    if n == 0 {
        return Ok(m);
    }
    Ok((m + n).div_ceil(q as usize - 1))
}

/// Schur matrix for the staircase partition `(m, m-1, ..., 1)`: entry
/// `(i, j)` (1-based) is `a_{lambda_i - i + j}` with `lambda_i = m - i + 1`,
/// zero when the index leaves `[0, m]`.
pub fn schur_provider(m: usize) -> Result<MatrixProvider> {
    if m == 0 {
        return Err(Error::InvalidInput("the Schur provider needs m >= 1".into()));
    }
    let nvars = m + 2;
    let mut data = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in 1..=m {
            let idx = (m + 1 + j) as isize - 2 * i as isize;
            data.push(if (0..=m as isize).contains(&idx) {
                MultiPoly::var(Integers, nvars, Var::A(idx as usize))
            } else {
                MultiPoly::zero(Integers, nvars)
            });
        }
    }
    Ok(MatrixProvider {
        q: None,
        m,
        n: 0,
        k: m,
        entries: SquareMatrix::new(m, data),
        source: ProviderSource::BuiltinSchurN0,
    })
}

impl MatrixProvider {
    /// Builds an external provider, checking the size against [`build_k`].
    pub fn new(q: Option<u32>, m: usize, n: usize, k: usize, entries: Vec<ZPoly>, citation: String) -> Result<Self> {
        check_header(q, m, n, k)?;
        if entries.len() != k * k {
            return Err(Error::ProviderInconsistency(format!(
                "k={k} needs {} entries, got {}",
                k * k,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.nvars() != m + 2) {
            return Err(Error::IncompatibleRing(format!(
                "entry {bad} is not in the ring of a0..a{m}, t"
            )));
        }
        Ok(MatrixProvider {
            q,
            m,
            n,
            k,
            entries: SquareMatrix::new(k, entries),
            source: ProviderSource::ExternalFile { citation },
        })
    }

    pub fn nvars(&self) -> usize {
        self.m + 2
    }

    pub fn is_builtin(&self) -> bool {
        self.source == ProviderSource::BuiltinSchurN0
    }

    pub fn transposed(&self) -> Self {
        MatrixProvider {
            entries: self.entries.transpose(),
            ..self.clone()
        }
    }

    /// Canonical file text; parsing it back gives an equal provider.
    pub fn to_file_text(&self) -> String {
        let mut s = String::new();
        match self.q {
            Some(q) => writeln!(s, "q: {q}").unwrap(),
            None => s.push_str("q: any\n"),
        }
        writeln!(s, "m: {}\nn: {}\nk: {}", self.m, self.n, self.k).unwrap();
        match &self.source {
            ProviderSource::BuiltinSchurN0 => writeln!(s, "source: {BUILTIN_SOURCE}").unwrap(),
            ProviderSource::ExternalFile { citation } => writeln!(s, "source: {citation}").unwrap(),
        }
        s.push_str("entries:\n");
        for e in self.entries.entries() {
            s.push_str(&format_poly(e));
            s.push('\n');
        }
        s
    }

    /// Short content hash of the canonical text.
    pub fn provider_id(&self) -> String {
        let digest = Sha256::digest(self.to_file_text().as_bytes());
        hex::encode(&digest[..8])
    }
}

fn check_header(q: Option<u32>, m: usize, n: usize, k: usize) -> Result<()> {
    match q {
        None if n > 0 => Err(Error::ProviderInconsistency(
            "q: any is only allowed for n = 0 providers".into(),
        )),
        None => {
            if k != m {
                return Err(Error::ProviderInconsistency(format!(
                    "k={k} inconsistent with the n = 0 size k = m = {m}"
                )));
            }
            Ok(())
        }
        Some(q) => {
            let expected = build_k(q as u64, m, n)?;
            if k == expected {
                Ok(())
            } else if n == 0 {
                Err(Error::ProviderInconsistency(format!(
                    "k={k} inconsistent with the n = 0 size k = m = {m}"
                )))
            } else {
                Err(Error::ProviderInconsistency(format!(
                    "k={k} inconsistent with k = ceil((m+n)/(q-1)) = {expected} for q={q}, m={m}, n={n}"
                )))
            }
        }
    }
}

/// Parses provider text; errors name the offending line.
pub fn parse_provider(text: &str) -> Result<MatrixProvider> {
    let mut q: Option<Option<u32>> = None;
    let mut m = None;
    let mut n = None;
    let mut k = None;
    let mut source = None;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut entries_line = None;
    for (no, line) in lines.by_ref() {
        if line == "entries:" {
            entries_line = Some(no);
            break;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(no, format!("expected 'key: value', got '{line}'")))?;
        let value = value.trim();
        let int = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::parse(no, format!("{key} must be a nonnegative integer, got '{v}'")))
        };
        match key.trim() {
            "q" if value == "any" => q = Some(None),
            "q" => {
                let v = value
                    .parse::<u32>()
                    .map_err(|_| Error::parse(no, format!("q must be an integer or 'any', got '{value}'")))?;
                q = Some(Some(v));
            }
            "m" => m = Some(int(value)?),
            "n" => n = Some(int(value)?),
            "k" => k = Some(int(value)?),
            "source" => source = Some(value.to_string()),
            other => return Err(Error::parse(no, format!("unknown header field '{other}'"))),
        }
    }
    let Some(entries_no) = entries_line else {
        return Err(Error::parse(text.lines().count().max(1), "missing 'entries:' section"));
    };
    let missing = |f: &str| Error::parse(entries_no, format!("header field '{f}' missing"));
    let q = q.ok_or_else(|| missing("q"))?;
    let m = m.ok_or_else(|| missing("m"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let source = source.ok_or_else(|| missing("source"))?;
    check_header(q, m, n, k)?;

    let mut entries = Vec::with_capacity(k * k);
    let mut last_no = entries_no;
    for (no, line) in lines {
        last_no = no;
        if entries.len() == k * k {
            return Err(Error::parse(no, format!("more than k^2 = {} entries", k * k)));
        }
        let p = parse_poly(Integers, m + 2, line).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(no, msg),
            other => Error::parse(no, other.to_string()),
        })?;
        entries.push(p);
    }
    if entries.len() != k * k {
        return Err(Error::parse(
            last_no,
            format!("expected k^2 = {} entries, found {}", k * k, entries.len()),
        ));
    }

    if source == BUILTIN_SOURCE {
        let builtin = schur_provider(m)?;
        if q.is_some() || n != 0 || builtin.entries.entries() != entries.as_slice() {
            return Err(Error::ProviderInconsistency(format!(
                "file claims source {BUILTIN_SOURCE} but does not match the built-in matrix for m={m}"
            )));
        }
        return Ok(builtin);
    }
    MatrixProvider::new(q, m, n, k, entries, source)
}

pub fn load_provider(path: &Path) -> Result<MatrixProvider> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_provider(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_k_examples() {
        assert_eq!(build_k(3, 5, 1).unwrap(), 3);
        assert_eq!(build_k(2, 4, 1).unwrap(), 5);
        assert_eq!(build_k(2, 0, 1).unwrap(), 1);
        assert_eq!(build_k(3, 6, 0).unwrap(), 6);
        assert!(build_k(1, 3, 1).is_err());
    }

    #[test]
    fn schur_rows() {
        let p2 = schur_provider(2).unwrap();
        let texts: Vec<String> = p2.entries.entries().iter().map(format_poly).collect();
        assert_eq!(texts, ["a2", "0", "a0", "a1"]);

        let p3 = schur_provider(3).unwrap();
        let row = |i: usize| -> Vec<String> { (0..3).map(|j| format_poly(p3.entries.get(i, j))).collect() };
        assert_eq!(row(0), ["a3", "0", "0"]);
        assert_eq!(row(2), ["0", "a0", "a1"]);
        for e in p3.entries.entries() {
            assert!(e.total_degree().unwrap_or(0) <= 1);
        }
    }

    #[test]
    fn text_round_trip() {
        let p = schur_provider(3).unwrap();
        let back = parse_provider(&p.to_file_text()).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.provider_id(), p.provider_id());

        let ext = "q: 2\nm: 0\nn: 1\nk: 1\nsource: hand\nentries:\na0\n";
        let e = parse_provider(ext).unwrap();
        assert_eq!(e.to_file_text(), ext);
    }

    #[test]
    fn wrong_k_is_rejected() {
        let text = "q: 3\nm: 5\nn: 1\nk: 2\nsource: x\nentries:\n1\n0\n0\n1\n";
        let err = parse_provider(text).unwrap_err();
        assert!(err.to_string().contains("ceil((m+n)/(q-1)) = 3"), "{err}");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "q: 2\nm: 0\nn: 1\nk: 1\nsource: x\nentries:\na0 +* 2\n";
        assert!(matches!(parse_provider(text), Err(Error::Parse { line: 7, .. })));
        let short = "q: 2\nm: 1\nn: 1\nk: 2\nsource: x\nentries:\na0\n0\n1\n";
        assert!(matches!(parse_provider(short), Err(Error::Parse { line: 9, .. })));
        // a1 is outside the ring when m = 0
        let oob = "q: 2\nm: 0\nn: 1\nk: 1\nsource: x\nentries:\na1\n";
        assert!(matches!(parse_provider(oob), Err(Error::Parse { line: 7, .. })));
        assert!(parse_provider("q: 2\nm: 0\n").is_err());
    }

    #[test]
    fn any_polynomial_entry_is_accepted() {
        let text = "q: 2\nm: 0\nn: 1\nk: 1\nsource: x\nentries:\na0^2*t\n";
        assert!(parse_provider(text).is_ok());
    }
}
