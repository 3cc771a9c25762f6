//! Packed monomials for the Gröbner engine.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Most variables an ideal may use (the `a`-variables plus one auxiliary).
pub const MAX_VARS: usize = 16;

/// Exponent vector with cached total degree; unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    deg: u32,
    e: [u8; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono {
        deg: 0,
        e: [0; MAX_VARS],
    };

    pub fn from_exps(exps: &[u16]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "ideals support at most {MAX_VARS} variables, got {}",
                exps.len()
            )));
        }
        let mut e = [0u8; MAX_VARS];
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u8::try_from(x).map_err(|_| Error::ExponentOverflow { var: i })?;
        }
        Ok(Mono {
            deg: exps.iter().map(|&x| x as u32).sum(),
            e,
        })
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.e[i]
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Result<Mono> {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i]
                .checked_add(other.e[i])
                .ok_or(Error::ExponentOverflow { var: i })?;
        }
        Ok(Mono {
            deg: self.deg + other.deg,
            e,
        })
    }

    /// `self / other`; requires `other | self`.
    #[inline]
    pub fn div(&self, other: &Mono) -> Mono {
        debug_assert!(other.divides(self));
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] - other.e[i];
        }
        Mono {
            deg: self.deg - other.deg,
            e,
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
            deg += e[i] as u32;
        }
        Mono { deg, e }
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self : x_i`, lowering exponent `i` by one if positive.
    pub fn colon_var(&self, i: usize) -> Mono {
        let mut m = *self;
        if m.e[i] > 0 {
            m.e[i] -= 1;
            m.deg -= 1;
        }
        m
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u16> {
        self.e[..nvars].iter().map(|&x| x as u16).collect()
    }
}

/// Monomial order. Variables are ordered `x0 < x1 < ... `; in the ideal
/// rings `x_j` is `a_j` and an auxiliary variable, if any, comes last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    GrevLex,
    Lex,
}

impl TermOrder {
    #[inline]
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            TermOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for i in 0..MAX_VARS {
                    if a.e[i] != b.e[i] {
                        return b.e[i].cmp(&a.e[i]);
                    }
                }
                Ordering::Equal
            }),
            TermOrder::Lex => {
                for i in (0..MAX_VARS).rev() {
                    if a.e[i] != b.e[i] {
                        return a.e[i].cmp(&b.e[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Integer key whose natural order agrees with `cmp`.
    #[inline]
    pub fn key(self, m: &Mono) -> (u32, u128) {
        match self {
            TermOrder::GrevLex => {
                let mut k = 0u128;
                for &x in &m.e {
                    k = (k << 8) | (255 - x) as u128;
                }
                (m.deg, k)
            }
            TermOrder::Lex => {
                let mut k = 0u128;
                for &x in m.e.iter().rev() {
                    k = (k << 8) | x as u128;
                }
                (0, k)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TermOrder::GrevLex => "grevlex",
            TermOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(TermOrder::GrevLex),
            "lex" => Ok(TermOrder::Lex),
            other => Err(Error::InvalidInput(format!("unknown term order '{other}'"))),
        }
    }
}
