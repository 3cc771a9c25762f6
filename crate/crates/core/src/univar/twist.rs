//! Twist representatives `P = a0 + a1 θ + ... + am θ^m` over `F_q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::factor::{factorize, is_powerfree_poly};
use super::poly::UniPoly;
use crate::algebra::{FieldSpec, FqElement};
use crate::error::{Error, Result};

/// Coefficient vector `(a0, ..., am)`; trailing zeros are kept so that the
/// length records the ambient degree bound `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistPoly {
    field: FieldSpec,
    coeffs: Vec<FqElement>,
}

impl TwistPoly {
    pub fn new(field: FieldSpec, coeffs: Vec<FqElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a twist needs at least a0".into()));
        }
        for c in &coeffs {
            field.elem(c.0)?;
        }
        Ok(TwistPoly { field, coeffs })
    }

    pub fn from_reprs(field: &FieldSpec, reprs: &[u32]) -> Result<Self> {
        Self::new(field.clone(), reprs.iter().map(|&r| FqElement(r)).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    /// The degree bound `m`.
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::new(self.field.clone(), self.coeffs.clone())
    }

    /// Re-pads to a different degree bound.
    pub fn with_bound(&self, m: usize) -> Result<Self> {
        if self.coeffs.iter().skip(m + 1).any(|c| !c.is_zero()) {
            return Err(Error::InvalidInput(format!(
                "{self} has degree above the bound {m}"
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m + 1, FqElement::ZERO);
        Ok(TwistPoly {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// `P(θ + a)`, with the same degree bound.
    pub fn shift(&self, a: FqElement) -> TwistPoly {
        let shifted = self.to_unipoly().shift(a);
        let mut coeffs = shifted.coeffs().to_vec();
        coeffs.resize(self.coeffs.len(), FqElement::ZERO);
        TwistPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn require_nonzero(&self) -> Result<UniPoly> {
        let u = self.to_unipoly();
        if u.is_zero() {
            Err(Error::InvalidInput("the zero polynomial is not a twist".into()))
        } else {
            Ok(u)
        }
    }

    /// True iff no irreducible factor occurs with multiplicity `>= r`;
    /// `r = q - 1` is the twist condition, `r = 2` squarefreeness.
    pub fn is_powerfree(&self, r: u32) -> Result<bool> {
        is_powerfree_poly(&self.require_nonzero()?, r)
    }

    pub fn is_monic(&self) -> bool {
        self.to_unipoly().is_monic()
    }
}

impl fmt::Display for TwistPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.field)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c.0)?;
        }
        Ok(())
    }
}

impl FromStr for TwistPoly {
    type Err = Error;

    /// Parses `F3:1,0,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse(1, format!("twist '{s}' needs a field tag, e.g. F3:1,0,2")))?;
        let field = FieldSpec::from_tag(tag)?;
        let coeffs = body
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(1, format!("bad residue '{c}' in twist '{s}'")))
                    .and_then(|r| field.elem(r))
            })
            .collect::<Result<Vec<_>>>()?;
        TwistPoly::new(field, coeffs)
    }
}

/// `P(θ + a) = P(θ)` for every `a`, checked by substitution.
pub fn shift_stable_by_substitution(p: &TwistPoly) -> bool {
    let u = p.to_unipoly();
    p.field.elements().all(|a| u.shift(a) == u)
}

/// Whether `P` is a polynomial in `θ^q - θ`, checked by expanding `P` in the
/// `(θ^q - θ)`-adic basis and requiring every digit to be constant.
pub fn shift_stable_by_basis(p: &TwistPoly) -> bool {
    let field = p.field.clone();
    let q = field.order() as usize;
    let u = UniPoly::x(field.clone()).pow(q as u64).sub(&UniPoly::x(field));
    let mut rest = p.to_unipoly();
    while !rest.is_zero() {
        let (quot, digit) = rest.divrem(&u).expect("nonzero basis element");
        if digit.degree().is_some_and(|d| d > 0) {
            return false;
        }
        rest = quot;
    }
    true
}

/// Shift stability, decided by both methods.
///
/// # Panics
/// If the two methods disagree, which would be an internal bug.
pub fn is_shift_stable(p: &TwistPoly) -> bool {
    let by_sub = shift_stable_by_substitution(p);
    let by_basis = shift_stable_by_basis(p);
    assert_eq!(by_sub, by_basis, "shift-stability methods disagree on {p}");
    by_sub
}

/// Whether `P1 / P2` is a `(q-1)`-th power in `F_q(θ)^*`.
pub fn twist_equivalent(p1: &TwistPoly, p2: &TwistPoly) -> Result<bool> {
    if p1.field != p2.field {
        return Err(Error::IncompatibleRing(format!("{} vs {}", p1.field, p2.field)));
    }
    let u1 = p1.require_nonzero()?;
    let u2 = p2.require_nonzero()?;
    let field = &p1.field;
    let r = field.order() as i64 - 1;
    if r == 1 {
        return Ok(true);
    }
    // exponents of P1 * P2^(q-2), taken mod q - 1
    let mut mult: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (g, e) in factorize(&u1)?.factors {
        *mult.entry(g.coeffs().iter().map(|c| c.0).collect()).or_default() += e as i64;
    }
    for (g, e) in factorize(&u2)?.factors {
        *mult.entry(g.coeffs().iter().map(|c| c.0).collect()).or_default() += (r - 1) * e as i64;
    }
    if mult.values().any(|e| e % r != 0) {
        return Ok(false);
    }
    let lead = field.mul(u1.lead(), field.pow(u2.lead(), r as u64 - 1));
    Ok(field.is_nth_power(lead, r as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(s: &str) -> TwistPoly {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        let p = tw("F3:1,0,2,1");
        assert_eq!(p.to_string(), "F3:1,0,2,1");
        assert_eq!(p.m(), 3);
        assert!("F3:1,3".parse::<TwistPoly>().is_err());
        assert!("1,2".parse::<TwistPoly>().is_err());
        assert!("F6:1".parse::<TwistPoly>().is_err());
    }

    #[test]
    fn shift_stable_examples() {
        // θ^3 - θ
        assert!(is_shift_stable(&tw("F3:0,2,0,1")));
        assert!(!is_shift_stable(&tw("F3:0,1")));
        // (θ^3 - θ)^2 + 2 = θ^6 - 2θ^4 + θ^2 + 2
        assert!(is_shift_stable(&tw("F3:2,0,1,0,1,0,1")));
        assert!(is_shift_stable(&tw("F3:2")));
    }

    #[test]
    fn twist_equivalence_examples() {
        assert!(twist_equivalent(&tw("F3:0,1"), &tw("F3:0,0,0,0,0,1")).unwrap());
        assert!(!twist_equivalent(&tw("F3:0,1"), &tw("F3:1,1")).unwrap());
        assert!(twist_equivalent(&tw("F2:0,1"), &tw("F2:1,1,1")).unwrap());
        // constants: 2 is not a square-class representative of 1 in F3
        assert!(!twist_equivalent(&tw("F3:2"), &tw("F3:1")).unwrap());
        assert!(twist_equivalent(&tw("F3:0"), &tw("F3:1")).is_err());
    }

    #[test]
    fn powerfree_needs_nonzero() {
        assert!(tw("F3:0,0").is_powerfree(2).is_err());
        assert!(tw("F3:1,0").is_powerfree(2).unwrap());
    }
}
