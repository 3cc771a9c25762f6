//! Finite fields `F_{p^e}` with `q = p^e <= 2^16`.
//!
//! Elements are stored as their canonical residue: for `e = 1` the integer in
//! `0..p`, for `e > 1` the base-`p` encoding `sum c_i p^i` of the reduced
//! polynomial `sum c_i x^i` modulo the stored irreducible modulus.
//! Multiplication in extension fields goes through discrete log tables built
//! once at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A finite field element: the canonical residue representative.
///
/// The element carries no field reference; arithmetic always goes through the
/// owning [`FieldSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElement(pub u32);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn repr(self) -> u32 {
        self.0
    }
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length `e + 1`. Only for `e > 1`.
    modulus: Option<Vec<u32>>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, extension fields only.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`, extension fields only.
    log: Vec<u32>,
}

/// Description of `F_q`, cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.q.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F{}", self.0.q),
            Some(m) => write!(f, "F{}[modulus={:?}]", self.0.q, m),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("p = {p} exceeds 2^16")));
        }
        Ok(FieldSpec(Arc::new(FieldInner {
            p,
            e: 1,
            q: p,
            modulus: None,
            exp: Vec::new(),
            log: Vec::new(),
        })))
    }

    /// `F_q` for a prime power `q`, using the smallest monic irreducible
    /// modulus (ordered by its base-`p` encoding) when `q` is not prime.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("q = {q} exceeds 2^16")));
        }
        if e == 1 {
            return Self::prime(p);
        }
        let modulus = (0..(q as u32))
            .map(|low| {
                let mut m = digits(low, p, e as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible_mod_p(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::with_modulus(p, modulus)
    }

    /// `F_{p^e}` with an explicit monic modulus (low coefficient first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut modulus = modulus;
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be residues mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let e = (modulus.len() - 1) as u32;
        if e == 1 {
            return Self::prime(p);
        }
        let q64 = (p as u64).pow(e);
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("q = {q64} exceeds 2^16")));
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F{p}"
            )));
        }
        let q = q64 as u32;
        let slow_mul = |a: u32, b: u32| -> u32 { poly_mul_mod(a, b, p, &modulus) };
        let mut exp = Vec::new();
        let mut log = Vec::new();
        for g in 2..q {
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = slow_mul(x, g);
                if x == 1 || powers.len() >= q as usize {
                    break;
                }
            }
            if powers.len() == q as usize - 1 {
                log = vec![0u32; q as usize];
                for (i, &v) in powers.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                exp = powers.clone();
                exp.extend_from_slice(&powers);
                break;
            }
        }
        debug_assert!(!exp.is_empty(), "multiplicative group is cyclic");
        Ok(FieldSpec(Arc::new(FieldInner {
            p,
            e,
            q,
            modulus: Some(modulus),
            exp,
            log,
        })))
    }

    /// Parses a field tag such as `F3` or `F9`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        let body = tag
            .strip_prefix('F')
            .ok_or_else(|| Error::InvalidField(format!("field tag '{tag}' must start with F")))?;
        let q: u64 = body
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad field tag '{tag}'")))?;
        Self::new(q)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    pub fn zero(&self) -> FqElement {
        FqElement::ZERO
    }

    pub fn one(&self) -> FqElement {
        FqElement::ONE
    }

    /// Canonical element from a residue representative.
    pub fn elem(&self, repr: u32) -> Result<FqElement> {
        if repr < self.0.q {
            Ok(FqElement(repr))
        } else {
            Err(Error::IncompatibleRing(format!(
                "residue {repr} is not a canonical element of {self}"
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> FqElement {
        FqElement(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.0.q).map(FqElement)
    }

    #[inline]
    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a.0 + b.0;
            FqElement(if s >= p { s - p } else { s })
        } else if p == 2 {
            FqElement(a.0 ^ b.0)
        } else {
            let (mut x, mut y) = (a.0, b.0);
            let mut out = 0;
            let mut scale = 1;
            while x > 0 || y > 0 {
                out += ((x % p + y % p) % p) * scale;
                x /= p;
                y /= p;
                scale *= p;
            }
            FqElement(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElement) -> FqElement {
        let p = self.0.p;
        if self.0.e == 1 {
            FqElement(if a.0 == 0 { 0 } else { p - a.0 })
        } else if p == 2 {
            a
        } else {
            let mut x = a.0;
            let mut out = 0;
            let mut scale = 1;
            while x > 0 {
                out += ((p - x % p) % p) * scale;
                x /= p;
                scale *= p;
            }
            FqElement(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        if a.0 == 0 || b.0 == 0 {
            return FqElement::ZERO;
        }
        if self.0.e == 1 {
            FqElement(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32)
        } else {
            let l = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
            FqElement(self.0.exp[l as usize])
        }
    }

    pub fn pow(&self, a: FqElement, mut n: u64) -> FqElement {
        let mut base = a;
        let mut acc = FqElement::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElement) -> Result<FqElement> {
        if a.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: FqElement, b: FqElement) -> Result<FqElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique `p`-th root, `a^(q/p)`.
    pub fn pth_root(&self, a: FqElement) -> FqElement {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// Whether `c` is a `d`-th power in `F_q^*`: `c^((q-1)/gcd(d, q-1)) = 1`.
    pub fn is_nth_power(&self, c: FqElement, d: u64) -> bool {
        if c.is_zero() {
            return false;
        }
        let order = self.0.q as u64 - 1;
        let g = num_integer::gcd(d, order);
        self.pow(c, order / g) == FqElement::ONE
    }
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn poly_mul_mod(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let e = modulus.len() - 1;
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (e..2 * e).rev() {
        let c = prod[d];
        if c != 0 {
            for (k, &mk) in modulus.iter().enumerate().take(e) {
                let idx = d - e + k;
                prod[idx] = (prod[idx] + (p as u64 - c) * mk as u64) % p as u64;
            }
            prod[d] = 0;
        }
    }
    prod[..e]
        .iter()
        .rev()
        .fold(0u32, |acc, &c| acc * p + c as u32)
}

/// Remainder of `f` by a monic `g` over `F_p`; both low coefficient first.
fn rem_mod_p(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = r.pop().unwrap();
        if c != 0 {
            let base = r.len() - dg;
            for k in 0..dg {
                r[base + k] = (r[base + k] + (p as u64 - c) * g[k] as u64) % p as u64;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `<= deg/2`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d);
            g.push(1);
            if rem_mod_p(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
