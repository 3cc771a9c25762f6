//! Coefficient rings: `ZZ`, `QQ` and `F_q`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{FieldSpec, FqElement};
use crate::error::{Error, Result};

/// A value supplied from outside a polynomial ring, e.g. in a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Fq(FqElement),
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }
}

impl From<FqElement> for Scalar {
    fn from(v: FqElement) -> Self {
        Scalar::Fq(v)
    }
}

/// Commutative coefficient ring. The ring value is the tag carried by each
/// polynomial; elements carry no context of their own.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Maps an external value into the ring.
    fn coerce(&self, s: &Scalar) -> Result<Self::Elem>;

    /// Reads a numeric literal of the polynomial text format.
    fn from_literal(&self, lit: &BigRational) -> Result<Self::Elem>;

    /// `(negative, magnitude)` for printing. Finite fields always report a
    /// nonnegative residue.
    fn to_literal(&self, a: &Self::Elem) -> (bool, String);

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut n: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl fmt::Display for Integers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ZZ")
    }
}

impl fmt::Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QQ")
    }
}

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn coerce(&self, s: &Scalar) -> Result<BigInt> {
        match s {
            Scalar::Int(v) => Ok(v.clone()),
            Scalar::Rat(r) if r.is_integer() => Ok(r.to_integer()),
            Scalar::Rat(r) => Err(Error::IncompatibleRing(format!("{r} is not an integer"))),
            Scalar::Fq(e) => Err(Error::IncompatibleRing(format!(
                "finite field element {} cannot be assigned in ZZ",
                e.0
            ))),
        }
    }
    fn from_literal(&self, lit: &BigRational) -> Result<BigInt> {
        if lit.is_integer() {
            Ok(lit.to_integer())
        } else {
            Err(Error::IncompatibleRing(format!("{lit} is not an integer")))
        }
    }
    fn to_literal(&self, a: &BigInt) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn coerce(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Int(v) => Ok(BigRational::from_integer(v.clone())),
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Fq(e) => Err(Error::IncompatibleRing(format!(
                "finite field element {} cannot be assigned in QQ",
                e.0
            ))),
        }
    }
    fn from_literal(&self, lit: &BigRational) -> Result<BigRational> {
        Ok(lit.clone())
    }
    fn to_literal(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

impl CoeffRing for FieldSpec {
    type Elem = FqElement;

    fn zero(&self) -> FqElement {
        FqElement::ZERO
    }
    fn one(&self) -> FqElement {
        FqElement::ONE
    }
    fn is_zero(&self, a: &FqElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FieldSpec::add(self, *a, *b)
    }
    fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FieldSpec::sub(self, *a, *b)
    }
    fn neg(&self, a: &FqElement) -> FqElement {
        FieldSpec::neg(self, *a)
    }
    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FieldSpec::mul(self, *a, *b)
    }
    fn from_i64(&self, v: i64) -> FqElement {
        FieldSpec::from_i64(self, v)
    }
    fn coerce(&self, s: &Scalar) -> Result<FqElement> {
        match s {
            Scalar::Fq(e) => self.elem(e.0),
            Scalar::Int(v) => Ok(self.reduce_int(v)),
            Scalar::Rat(r) => {
                let den = self.reduce_int(r.denom());
                if den.is_zero() {
                    return Err(Error::IncompatibleRing(format!(
                        "{r} has a denominator divisible by {}",
                        self.characteristic()
                    )));
                }
                self.div(self.reduce_int(r.numer()), den)
            }
        }
    }
    fn from_literal(&self, lit: &BigRational) -> Result<FqElement> {
        if !lit.is_integer() {
            return Err(Error::IncompatibleRing(format!("{lit} is not a residue of {self}")));
        }
        let v = lit.to_integer();
        if self.is_prime_field() {
            return Ok(self.reduce_int(&v));
        }
        v.to_u32()
            .and_then(|r| self.elem(r).ok())
            .ok_or_else(|| Error::IncompatibleRing(format!("{v} is not a residue of {self}")))
    }
    fn to_literal(&self, a: &FqElement) -> (bool, String) {
        (false, a.0.to_string())
    }
}

impl FieldSpec {
    /// Image of an integer in the prime subfield.
    pub fn reduce_int(&self, v: &BigInt) -> FqElement {
        let p = BigInt::from(self.characteristic());
        let r = ((v % &p) + &p) % &p;
        FqElement(r.to_u32().expect("residue fits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coerce_rational_into_prime_field() {
        let f = FieldSpec::new(5).unwrap();
        let half = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        assert_eq!(f.coerce(&half).unwrap(), FqElement(3));
        let fifth = Scalar::Rat(BigRational::new(1.into(), 5.into()));
        assert!(matches!(f.coerce(&fifth), Err(Error::IncompatibleRing(_))));
    }

    #[test]
    fn coerce_rejects_fractions_in_integers() {
        let half = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        assert!(Integers.coerce(&half).is_err());
        assert!(Integers.coerce(&Scalar::Fq(FqElement(1))).is_err());
        assert_eq!(Rationals.coerce(&Scalar::from(3)).unwrap(), Rationals.from_i64(3));
    }
}
