use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector over a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(smallvec::smallvec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(exps.iter().copied().collect())
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (i, (a, b)) in out.iter_mut().zip(other.0.iter()).enumerate() {
            *a = a.checked_add(*b).ok_or(Error::ExponentOverflow { var: i })?;
        }
        Ok(Monomial(out))
    }

    /// Product of monomials.
    ///
    /// # Panics
    /// On exponent overflow past `u16::MAX`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn with_exp(&self, var: usize, exp: u16) -> Monomial {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }

    /// Graded reverse lexicographic order with variable 0 the smallest.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(other.0.iter()) {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}
