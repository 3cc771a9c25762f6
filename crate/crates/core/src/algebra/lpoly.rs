//! Polynomials in `T` with [`MultiPoly`] coefficients.
//!
//! Text form: `(c0) + (c1)*T + (c2)*T^2 + ...`, one parenthesised coefficient
//! per nonzero power of `T`, lowest power first; the zero polynomial is `0`.

use std::fmt;

use super::poly::MultiPoly;
use super::ring::CoeffRing;
use super::text::{format_poly, parse_poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly<R: CoeffRing> {
    ring: R,
    nvars: usize,
    coeffs: Vec<MultiPoly<R>>,
}

impl<R: CoeffRing> LPoly<R> {
    /// Builds from coefficients of `T^0, T^1, ...`, trimming trailing zeros.
    pub fn new(ring: R, nvars: usize, coeffs: Vec<MultiPoly<R>>) -> Self {
        for c in &coeffs {
            assert!(c.ring() == &ring && c.nvars() == nvars, "coefficient ring mismatch");
        }
        let mut l = LPoly { ring, nvars, coeffs };
        l.trim();
        l
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = MultiPoly::one(ring.clone(), nvars);
        LPoly::new(ring, nvars, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[MultiPoly<R>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MultiPoly<R>> {
        self.coeffs
    }

    /// Coefficient of `T^beta`, zero past the degree.
    pub fn coeff(&self, beta: usize) -> MultiPoly<R> {
        self.coeffs
            .get(beta)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.ring.clone(), self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `deg_T`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.nvars != other.nvars {
            return Err(Error::IncompatibleRing("L-polynomial rings differ".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(LPoly::new(self.ring.clone(), self.nvars, Vec::new()));
        }
        let zero = MultiPoly::zero(self.ring.clone(), self.nvars);
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(LPoly::new(self.ring.clone(), self.nvars, out))
    }

    /// Value at `T = a`.
    pub fn eval_t_at(&self, a: &R::Elem) -> MultiPoly<R> {
        let mut acc = MultiPoly::zero(self.ring.clone(), self.nvars);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(a) + c;
        }
        acc
    }

    /// Quotient and remainder of division by the monic `T - a`.
    pub fn div_linear(&self, a: &R::Elem) -> (Self, MultiPoly<R>) {
        let Some(deg) = self.degree() else {
            return (self.clone(), MultiPoly::zero(self.ring.clone(), self.nvars));
        };
        let zero = MultiPoly::zero(self.ring.clone(), self.nvars);
        let mut quot = vec![zero.clone(); deg];
        let mut carry = zero;
        for beta in (0..=deg).rev() {
            let cur = &self.coeffs[beta] + &carry.scale(a);
            if beta == 0 {
                return (LPoly::new(self.ring.clone(), self.nvars, quot), cur);
            }
            quot[beta - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// Applies a map to every coefficient.
    pub fn map<S: CoeffRing>(&self, ring: S, nvars: usize, f: impl Fn(&MultiPoly<R>) -> Result<MultiPoly<S>>) -> Result<LPoly<S>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(LPoly::new(ring, nvars, coeffs))
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (beta, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = format!("({})", format_poly(c));
            parts.push(match beta {
                0 => body,
                1 => format!("{body}*T"),
                _ => format!("{body}*T^{beta}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn parse(ring: R, nvars: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(LPoly::new(ring, nvars, Vec::new()));
        }
        let err = |msg: &str| Error::parse(1, format!("{msg} in L-polynomial '{s}'"));
        let mut coeffs: Vec<MultiPoly<R>> = Vec::new();
        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            if !first {
                rest = rest
                    .strip_prefix(" + ")
                    .ok_or_else(|| err("expected ' + ' between T-terms"))?;
            }
            first = false;
            rest = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
            let c = parse_poly(ring.clone(), nvars, &rest[..close])?;
            rest = &rest[close + 1..];
            let mut beta = 0usize;
            if let Some(r) = rest.strip_prefix("*T") {
                beta = 1;
                rest = r;
                if let Some(r) = rest.strip_prefix('^') {
                    let end = r.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(r.len());
                    beta = r[..end].parse().map_err(|_| err("bad power of T"))?;
                    rest = &r[end..];
                }
            }
            if beta < coeffs.len() {
                return Err(err("powers of T must be strictly increasing"));
            }
            coeffs.resize(beta + 1, MultiPoly::zero(ring.clone(), nvars));
            coeffs[beta] = c;
        }
        Ok(LPoly::new(ring, nvars, coeffs))
    }
}

impl<R: CoeffRing> fmt::Display for LPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;

    #[test]
    fn text_round_trip() {
        for s in ["0", "(1)", "(1) + (-a2 - a1)*T + (a1*a2)*T^2", "(1) + (a1*t)*T^2"] {
            let l = LPoly::parse(Integers, 4, s).unwrap();
            assert_eq!(l.to_text(), s);
        }
        assert!(LPoly::parse(Integers, 4, "(1) + (a0)*T^2 + (a1)*T").is_err());
        assert!(LPoly::parse(Integers, 4, "(1").is_err());
    }

    #[test]
    fn division_by_linear() {
        // (T - 1)(T + 2) = T^2 + T - 2 over ZZ
        let l = LPoly::parse(Integers, 2, "(-2) + (1)*T + (1)*T^2").unwrap();
        let (q, r) = l.div_linear(&1.into());
        assert!(r.is_zero());
        assert_eq!(q.to_text(), "(2) + (1)*T");
        assert_eq!(l.eval_t_at(&1.into()), r);
    }
}
