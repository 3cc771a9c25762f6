//! Polynomial text format.
//!
//! A polynomial is a sum of terms `c*a0^e0*...*am^em*t^et`. The printer emits
//! terms in descending grevlex order, omits unit coefficients, unit exponents
//! and absent variables, and separates terms with ` + ` / ` - `. The zero
//! polynomial prints as `0`. The parser accepts that canonical form and any
//! looser spelling (repeated factors, explicit `1*` or `^1`, arbitrary
//! whitespace), so `print(parse(s)) == s` for every canonical `s`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::ring::CoeffRing;
use crate::error::{Error, Result};

pub fn var_name(nvars: usize, idx: usize) -> String {
    if idx + 1 == nvars {
        "t".to_string()
    } else {
        format!("a{idx}")
    }
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let nvars = m.nvars();
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&var_name(nvars, i));
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

pub fn format_poly<R: CoeffRing>(p: &MultiPoly<R>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (neg, mag) = p.ring().to_literal(c);
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            write_monomial(&mut out, m);
        }
    }
    out
}

impl<R: CoeffRing> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str, nvars: usize) -> Result<Vec<Tok>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |msg: String| Error::parse(1, msg);
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'+' => {
                toks.push(Tok::Plus);
                i += 1
            }
            b'-' => {
                toks.push(Tok::Minus);
                i += 1
            }
            b'*' => {
                toks.push(Tok::Star);
                i += 1
            }
            b'^' => {
                toks.push(Tok::Caret);
                i += 1
            }
            b'/' => {
                toks.push(Tok::Slash);
                i += 1
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok::Num(s[start..i].parse().expect("digits")));
            }
            b'a' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(format!("variable 'a' needs an index at byte {start}")));
                }
                let j: usize = s[start..i]
                    .parse()
                    .map_err(|_| err(format!("bad variable index '{}'", &s[start..i])))?;
                if j + 1 >= nvars {
                    return Err(err(format!(
                        "variable a{j} outside a0..a{}",
                        nvars as isize - 2
                    )));
                }
                toks.push(Tok::Var(j));
            }
            b't' => {
                toks.push(Tok::Var(nvars - 1));
                i += 1
            }
            _ => {
                return Err(err(format!(
                    "unexpected character '{}' at byte {i}",
                    s[i..].chars().next().unwrap()
                )))
            }
        }
    }
    Ok(toks)
}

/// Parses a polynomial in the text format over `ring` with `nvars` slots.
pub fn parse_poly<R: CoeffRing>(ring: R, nvars: usize, s: &str) -> Result<MultiPoly<R>> {
    let toks = tokenize(s, nvars)?;
    if toks.is_empty() {
        return Err(Error::parse(1, "empty polynomial"));
    }
    let err = |msg: &str| Error::parse(1, format!("{msg} in '{s}'"));
    let mut terms = Vec::new();
    let mut pos = 0;
    let mut first = true;
    while pos < toks.len() {
        let mut negative = false;
        match toks[pos] {
            Tok::Plus => {
                pos += 1;
            }
            Tok::Minus => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err("expected '+' or '-' between terms")),
        }
        first = false;
        let mut coeff = BigRational::one();
        let mut exps = vec![0u16; nvars];
        let mut expect_factor = true;
        while pos < toks.len() {
            if !expect_factor {
                if toks[pos] == Tok::Star {
                    pos += 1;
                    expect_factor = true;
                    continue;
                }
                break;
            }
            match &toks[pos] {
                Tok::Num(n) => {
                    pos += 1;
                    let mut lit = BigRational::from_integer(n.clone());
                    if pos < toks.len() && toks[pos] == Tok::Slash {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(d)) if !d.is_zero() => {
                                lit = BigRational::new(n.clone(), d.clone());
                                pos += 2;
                            }
                            _ => return Err(err("bad rational literal")),
                        }
                    }
                    coeff *= lit;
                }
                Tok::Var(j) => {
                    let j = *j;
                    pos += 1;
                    let mut e: u32 = 1;
                    if pos < toks.len() && toks[pos] == Tok::Caret {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(n)) => {
                                e = u32::try_from(n.clone())
                                    .ok()
                                    .filter(|&e| e <= u16::MAX as u32)
                                    .ok_or_else(|| err("exponent too large"))?;
                                pos += 2;
                            }
                            _ => return Err(err("expected exponent after '^'")),
                        }
                    }
                    let total = exps[j] as u32 + e;
                    exps[j] = u16::try_from(total).map_err(|_| Error::ExponentOverflow { var: j })?;
                }
                _ => return Err(err("expected a coefficient or a variable")),
            }
            expect_factor = false;
        }
        if expect_factor {
            return Err(err("dangling operator"));
        }
        if negative {
            coeff = -coeff;
        }
        let c = ring.from_literal(&coeff.abs())?;
        let c = if coeff.is_negative() { ring.neg(&c) } else { c };
        terms.push((Monomial::from_exponents(&exps), c));
    }
    Ok(MultiPoly::from_terms(ring, nvars, terms))
}
