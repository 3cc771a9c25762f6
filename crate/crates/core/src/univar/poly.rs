use std::fmt;

use num_bigint::BigUint;

use crate::algebra::{FieldSpec, FqElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `F_q`, lowest coefficient first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<FqElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self)
    }
}

/// Prints in the variable `x`, highest power first, e.g. `x^2 + 2*x + 1`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => f.write_str("x")?,
                (1, v) => write!(f, "{v}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn new(field: FieldSpec, coeffs: Vec<FqElement>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    /// From small integers taken in the prime subfield (or as residues).
    pub fn from_reprs(field: &FieldSpec, reprs: &[u32]) -> Result<Self> {
        let coeffs = reprs.iter().map(|&r| field.elem(r)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field.clone(), coeffs))
    }

    pub fn zero(field: FieldSpec) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, FqElement::ONE)
    }

    pub fn constant(field: FieldSpec, c: FqElement) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(field: FieldSpec, c: FqElement, n: usize) -> Self {
        let mut coeffs = vec![FqElement::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field, FqElement::ONE, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).copied().unwrap_or(FqElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElement::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FqElement {
        self.coeffs.last().copied().unwrap_or(FqElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FqElement::ONE
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn scale(&self, c: FqElement) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f.clone(),
            (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f.clone(),
            (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![FqElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.field.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        };
        let f = &self.field;
        let inv = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![FqElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient.
    ///
    /// # Panics
    /// If the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElement) -> FqElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FqElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: FqElement) -> Self {
        let lin = Self::new(self.field.clone(), vec![a, FqElement::ONE]);
        self.compose(&lin)
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.field.clone());
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(self.field.clone(), c));
        }
        acc
    }

    /// For `self = h(x)^p`, returns `h`. Requires a zero derivative.
    pub fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        debug_assert!(self.derivative().is_zero());
        Self::new(
            f.clone(),
            self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect(),
        )
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(self.field.clone()).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }
}

/// Monic greatest common divisor.
pub fn uni_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}
