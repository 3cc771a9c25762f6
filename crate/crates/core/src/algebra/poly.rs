//! Sparse multivariate polynomials in `a0, ..., am, t`.
//!
//! A polynomial over `m + 1` coefficient variables has `nvars = m + 2`
//! exponent slots: slot `j <= m` is `a_j`, the last slot is `t`. Terms are kept
//! sorted in descending graded reverse lexicographic order with
//! `a0 < a1 < ... < am < t`, and no zero coefficient is ever stored.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::field::FieldSpec;
use super::monomial::Monomial;
use super::ring::{CoeffRing, Integers, Rationals, Scalar};
use crate::error::{Error, Result};

/// A variable of the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A(usize),
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<R: CoeffRing> {
    ring: R,
    nvars: usize,
    terms: Vec<(Monomial, R::Elem)>,
}

pub type ZPoly = MultiPoly<Integers>;
pub type QPoly = MultiPoly<Rationals>;
pub type FqPoly = MultiPoly<FieldSpec>;

impl<R: CoeffRing> MultiPoly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        assert!(nvars >= 1, "a polynomial ring always has the t slot");
        MultiPoly {
            ring,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !p.ring.is_zero(&c) {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, nvars, c)
    }

    /// The variable `a_j` or `t`.
    pub fn var(ring: R, nvars: usize, v: Var) -> Self {
        let idx = var_index(nvars, v);
        let c = ring.one();
        MultiPoly {
            ring,
            nvars,
            terms: vec![(Monomial::var(nvars, idx, 1), c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            match acc.get_mut(&m) {
                Some(v) => *v = ring.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, nvars, acc)
    }

    fn from_map(ring: R, nvars: usize, acc: HashMap<Monomial, R::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        MultiPoly { ring, nvars, terms }
    }

    #[inline]
    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Number of exponent slots, `t` included.
    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of `a`-variables, `m + 1`.
    #[inline]
    pub fn num_a_vars(&self) -> usize {
        self.nvars - 1
    }

    #[inline]
    pub fn t_index(&self) -> usize {
        self.nvars - 1
    }

    /// Terms in descending grevlex order.
    #[inline]
    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> R::Elem {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Largest exponent of `var` in any term.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::IncompatibleRing(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::IncompatibleRing(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let take_other = |c: &R::Elem| if negate_other { ring.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_grevlex(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), take_other(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ring.sub(ca, cb) } else { ring.add(ca, cb) };
                    if !ring.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), take_other(c))));
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = ring.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = ring.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(self.ring.clone(), self.nvars, acc))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiplies by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.checked_mul(m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes values for some variables; the others stay symbolic.
    pub fn specialize(&self, assignment: &[(Var, Scalar)]) -> Result<Self> {
        let mut values: Vec<Option<R::Elem>> = vec![None; self.nvars];
        for (v, s) in assignment {
            let idx = match *v {
                Var::A(j) if j + 1 >= self.nvars => {
                    return Err(Error::InvalidInput(format!(
                        "variable a{j} is not in a ring with {} a-variables",
                        self.num_a_vars()
                    )))
                }
                v => var_index(self.nvars, v),
            };
            values[idx] = Some(self.ring.coerce(s)?);
        }
        self.specialize_elems(&values)
    }

    /// Substitutes ring elements, one optional value per exponent slot.
    pub fn specialize_elems(&self, values: &[Option<R::Elem>]) -> Result<Self> {
        assert_eq!(values.len(), self.nvars);
        if values.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        let ring = &self.ring;
        let mut power_cache: Vec<Vec<R::Elem>> = vec![Vec::new(); self.nvars];
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (idx, val) in values.iter().enumerate() {
                let Some(val) = val else { continue };
                let e = m.exp(idx) as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[idx];
                if cache.is_empty() {
                    cache.push(ring.one());
                }
                while cache.len() <= e {
                    let next = ring.mul(cache.last().unwrap(), val);
                    cache.push(next);
                }
                coeff = ring.mul(&coeff, &cache[e]);
                mono = mono.with_exp(idx, 0);
            }
            if ring.is_zero(&coeff) {
                continue;
            }
            match acc.get_mut(&mono) {
                Some(v) => *v = ring.add(v, &coeff),
                None => {
                    acc.insert(mono, coeff);
                }
            }
        }
        Ok(Self::from_map(ring.clone(), self.nvars, acc))
    }

    /// The common total degree in the `a`-variables, ignoring `t`.
    /// The zero polynomial reports degree 0.
    pub fn a_homogeneous_degree(&self) -> Option<u32> {
        let t = self.t_index();
        self.homogeneous_degree(|v| v != t)
    }

    /// The common total degree over the selected variables, if any.
    pub fn homogeneous_degree(&self, in_vars: impl Fn(usize) -> bool) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|(m, _)| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(i, _)| in_vars(*i))
                .map(|(_, &e)| e as u32)
                .sum::<u32>()
        });
        let Some(first) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Coefficients of powers of `t`: entry `alpha` is the `t`-free polynomial
    /// multiplying `t^alpha`.
    pub fn split_by_t(&self) -> Vec<Self> {
        let t = self.t_index();
        let top = self.degree_in(t).unwrap_or(0) as usize;
        let mut parts: Vec<Vec<(Monomial, R::Elem)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            parts[m.exp(t) as usize].push((m.with_exp(t, 0), c.clone()));
        }
        parts
            .into_iter()
            .map(|ts| Self::from_terms(self.ring.clone(), self.nvars, ts))
            .collect()
    }

    /// Same polynomial in a ring with more (or fewer, if unused) `a`-variables.
    pub fn with_a_vars(&self, num_a_vars: usize) -> Result<Self> {
        let new_nvars = num_a_vars + 1;
        let old_t = self.t_index();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; new_nvars];
            for j in 0..old_t {
                if m.exp(j) == 0 {
                    continue;
                }
                if j >= num_a_vars {
                    return Err(Error::IncompatibleRing(format!(
                        "a{j} occurs but the target ring has {num_a_vars} a-variables"
                    )));
                }
                e[j] = m.exp(j);
            }
            e[new_nvars - 1] = m.exp(old_t);
            terms.push((Monomial::from_exponents(&e), c.clone()));
        }
        Ok(Self::from_terms(self.ring.clone(), new_nvars, terms))
    }

    /// Applies a ring homomorphism coefficientwise.
    pub fn map_coeffs<S: CoeffRing>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        MultiPoly::from_terms(
            target.clone(),
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

fn var_index(nvars: usize, v: Var) -> usize {
    match v {
        Var::A(j) => {
            assert!(j + 1 < nvars, "a{j} out of range");
            j
        }
        Var::T => nvars - 1,
    }
}

impl ZPoly {
    /// Coefficientwise reduction into `F_p`.
    pub fn reduce_mod_p(&self, p: u32) -> Result<FqPoly> {
        let field = FieldSpec::prime(p)?;
        Ok(self.reduce_into(&field))
    }

    /// Coefficientwise reduction into the prime subfield of `field`.
    pub fn reduce_into(&self, field: &FieldSpec) -> FqPoly {
        self.map_coeffs(field.clone(), |c| field.reduce_int(c))
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(Rationals, |c| num_rational::BigRational::from_integer(c.clone()))
    }

    /// Gcd of all coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .iter()
            .fold(BigInt::from(0), |g, (_, c)| g.gcd(c))
    }
}

impl QPoly {
    /// Clears denominators and content; the sign of the leading coefficient is
    /// kept. Returns zero for zero.
    pub fn primitive_integer(&self) -> ZPoly {
        use num_integer::Integer;
        let lcm = self
            .terms
            .iter()
            .fold(BigInt::from(1), |l, (_, c)| l.lcm(c.denom()));
        let ints = self.map_coeffs(Integers, |c| (c * num_rational::BigRational::from_integer(lcm.clone())).to_integer());
        let g = ints.content();
        if g <= BigInt::from(1) {
            return ints;
        }
        ints.map_coeffs(Integers, |c| c / &g)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, R: CoeffRing> $trait<&'a MultiPoly<R>> for &'a MultiPoly<R> {
            type Output = MultiPoly<R>;

            /// # Panics
            /// On ring mismatch or exponent overflow; use the `checked_*`
            /// methods for fallible arithmetic.
            fn $method(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }

        impl<R: CoeffRing> $trait for MultiPoly<R> {
            type Output = MultiPoly<R>;

            fn $method(self, rhs: MultiPoly<R>) -> MultiPoly<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<R: CoeffRing> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn neg(self) -> MultiPoly<R> {
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(c)))
                .collect(),
        }
    }
}

impl<R: CoeffRing> Neg for MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn neg(self) -> MultiPoly<R> {
        -(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn z(s: &str, m: usize) -> ZPoly {
        parse_poly(Integers, m + 2, s).unwrap()
    }

    #[test]
    fn add_cancels_t() {
        assert_eq!(z("a0 + t", 1) + z("a0 - t", 1), z("2*a0", 1));
    }

    #[test]
    fn times_zero_is_zero() {
        let f = z("3*a0^2*t - a1 + 7", 1);
        assert!((&f * &ZPoly::zero(Integers, 3)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(z("a1 + a2", 2) * z("a1 - a2", 2), z("a1^2 - a2^2", 2));
    }

    #[test]
    fn self_difference_is_empty() {
        let f = z("a0*a1 - 5*t^3 + 2", 1);
        let d = &f - &f;
        assert!(d.is_zero());
        assert!(d.terms().is_empty());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let f3 = FqPoly::one(FieldSpec::new(3).unwrap(), 2);
        let f9 = FqPoly::one(FieldSpec::new(9).unwrap(), 2);
        assert!(matches!(f3.checked_add(&f9), Err(Error::IncompatibleRing(_))));
        let wide = FqPoly::one(FieldSpec::new(3).unwrap(), 3);
        assert!(matches!(f3.checked_mul(&wide), Err(Error::IncompatibleRing(_))));
    }

    #[test]
    fn exponent_overflow_is_checked() {
        let big = ZPoly::from_terms(Integers, 2, [(Monomial::var(2, 0, u16::MAX), BigInt::from(1))]);
        let a0 = ZPoly::var(Integers, 2, Var::A(0));
        assert!(matches!(big.checked_mul(&a0), Err(Error::ExponentOverflow { var: 0 })));
    }

    #[test]
    fn specialize_examples() {
        let f = parse_poly(Rationals, 3, "a0*a1 + t").unwrap();
        let s = f
            .specialize(&[(Var::A(0), Scalar::from(2)), (Var::A(1), Scalar::from(3))])
            .unwrap();
        assert_eq!(s, parse_poly(Rationals, 3, "6 + t").unwrap());
        assert_eq!(f.specialize(&[]).unwrap(), f);

        let f3 = FieldSpec::new(3).unwrap();
        let g = parse_poly(f3.clone(), 2, "a0^2").unwrap();
        let one = g
            .specialize(&[(Var::A(0), Scalar::Fq(crate::FqElement(1)))])
            .unwrap();
        assert_eq!(one, FqPoly::one(f3, 2));
    }

    #[test]
    fn specialize_rejects_unknown_variable() {
        let f = z("a0", 0);
        assert!(f.specialize(&[(Var::A(3), Scalar::from(1))]).is_err());
    }

    #[test]
    fn reduce_mod_p_examples() {
        let r = z("3*a0 + 2*t", 0).reduce_mod_p(3).unwrap();
        assert_eq!(r, parse_poly(FieldSpec::new(3).unwrap(), 2, "2*t").unwrap());
        assert!(z("6*a0*a1 - 9*t + 3", 1).reduce_mod_p(3).unwrap().is_zero());
        let sq = (z("a1 + a2", 2) * z("a1 + a2", 2)).reduce_mod_p(2).unwrap();
        assert_eq!(sq, parse_poly(FieldSpec::new(2).unwrap(), 4, "a1^2 + a2^2").unwrap());
        assert!(matches!(z("a0", 0).reduce_mod_p(4), Err(Error::InvalidField(_))));
    }

    #[test]
    fn homogeneity_examples() {
        assert_eq!(z("a0*a2 + a1^2", 2).a_homogeneous_degree(), Some(2));
        assert_eq!(z("a0 + a1^2", 2).a_homogeneous_degree(), None);
        assert_eq!(z("t^2*a0 + a1", 2).a_homogeneous_degree(), Some(1));
        assert_eq!(ZPoly::zero(Integers, 3).a_homogeneous_degree(), Some(0));
    }

    #[test]
    fn primitive_integer_clears_denominators() {
        let f = parse_poly(Rationals, 3, "1/2*a0 - 3/4*a1").unwrap();
        assert_eq!(f.primitive_integer(), z("2*a0 - 3*a1", 1));
    }
}
