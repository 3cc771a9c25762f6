use super::handle::{ideal_nesting_check, variety_ideal};
use crate::error::{Error, Result};

/// Geometry of `X(m, i)` as computed from its ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyReport {
    pub m: usize,
    pub i: usize,
    pub generators: usize,
    pub codimension: usize,
    /// `-1` for the empty projective set.
    pub projective_dimension: i64,
    pub degree: u128,
    /// `(m-1)(m-2)...(m-i)`.
    pub expected_degree: u128,
    pub complete_intersection: bool,
    pub nesting: Option<bool>,
}

/// `(m-1)(m-2)...(m-i)`.
pub fn expected_degree(m: usize, i: usize) -> u128 {
    (1..=i).map(|j| m.saturating_sub(j) as u128).product()
}

impl VarietyReport {
    pub fn compute(m: usize, i: usize, with_nesting: bool) -> Result<Self> {
        let ideal = variety_ideal(m, i)?;
        let h = ideal.hilbert_data()?;
        Ok(VarietyReport {
            m,
            i,
            generators: ideal.num_generators(),
            codimension: h.codimension(),
            projective_dimension: h.projective_dimension(),
            degree: h.degree,
            expected_degree: expected_degree(m, i),
            complete_intersection: ideal.is_complete_intersection()?,
            nesting: if with_nesting { Some(ideal_nesting_check(m, i)?) } else { None },
        })
    }

    pub fn degree_matches(&self) -> bool {
        self.degree == self.expected_degree
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "m: {}\ni: {}\ngenerators: {}\ncodimension: {}\nprojective-dimension: {}\ndegree: {}\nexpected-degree: {}\ncomplete-intersection: {}\n",
            self.m,
            self.i,
            self.generators,
            self.codimension,
            self.projective_dimension,
            self.degree,
            self.expected_degree,
            self.complete_intersection
        );
        if let Some(n) = self.nesting {
            s.push_str(&format!("nesting: {n}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = std::collections::BTreeMap::new();
        for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(n + 1, format!("expected 'key: value', got '{line}'")))?;
            if fields.insert(k.trim().to_string(), (n + 1, v.trim().to_string())).is_some() {
                return Err(Error::parse(n + 1, format!("duplicate field '{}'", k.trim())));
            }
        }
        fn get<T: std::str::FromStr>(f: &std::collections::BTreeMap<String, (usize, String)>, key: &str) -> Result<T> {
            let (line, v) = f
                .get(key)
                .ok_or_else(|| Error::parse(0, format!("variety report lacks '{key}'")))?;
            v.parse().map_err(|_| Error::parse(*line, format!("bad value '{v}' for '{key}'")))
        }
        let known = [
            "m",
            "i",
            "generators",
            "codimension",
            "projective-dimension",
            "degree",
            "expected-degree",
            "complete-intersection",
            "nesting",
        ];
        if let Some((k, (line, _))) = fields.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(Error::parse(*line, format!("unknown field '{k}'")));
        }
        Ok(VarietyReport {
            m: get(&fields, "m")?,
            i: get(&fields, "i")?,
            generators: get(&fields, "generators")?,
            codimension: get(&fields, "codimension")?,
            projective_dimension: get(&fields, "projective-dimension")?,
            degree: get(&fields, "degree")?,
            expected_degree: get(&fields, "expected-degree")?,
            complete_intersection: get(&fields, "complete-intersection")?,
            nesting: if fields.contains_key("nesting") { Some(get(&fields, "nesting")?) } else { None },
        })
    }
}
