//! Buchberger's algorithm with sugar selection and the Gebauer–Möller
//! criteria, over `ZZ` (fraction-free, standing in for `QQ`) or `F_p`.

use std::collections::hash_map::Entry as Slot;
use std::collections::BinaryHeap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use rustc_hash::FxHashMap;

use super::mono::{Mono, TermOrder};
use crate::error::{Error, Result};

/// Terms in descending order, no zero coefficients.
pub type Poly<C> = Vec<(Mono, C)>;

/// Coefficient arithmetic the engine needs.
pub trait GbCoeffs: Clone + fmt::Debug {
    type C: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn is_one(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// `s * a - u * b`.
    fn lin(&self, s: &Self::C, a: &Self::C, u: &Self::C, b: &Self::C) -> Self::C;
    /// Multipliers `(s, u)` with `s * a = u * b` and `s` as small as possible.
    fn cancel(&self, a: &Self::C, b: &Self::C) -> (Self::C, Self::C);
    /// Canonical associate: monic over a field, primitive with positive lead
    /// over `ZZ`.
    fn normalize(&self, p: &mut Poly<Self::C>);
    /// Optional coefficient shrinking during long reductions.
    fn shrink(&self, _coeffs: &mut [&mut Self::C]) {}
}

/// Integers, used fraction-free for ideals over `QQ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntCoeffs;

fn content(terms: &[(Mono, BigInt)]) -> BigInt {
    terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

impl GbCoeffs for IntCoeffs {
    type C = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn is_one(&self, c: &BigInt) -> bool {
        c.is_one()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn lin(&self, s: &BigInt, a: &BigInt, u: &BigInt, b: &BigInt) -> BigInt {
        if s.is_one() {
            a - u * b
        } else {
            s * a - u * b
        }
    }
    fn cancel(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let g = a.gcd(b);
        let (mut s, mut u) = (b / &g, a / &g);
        if s.is_negative() {
            s = -s;
            u = -u;
        }
        (s, u)
    }
    fn normalize(&self, p: &mut Poly<BigInt>) {
        let Some(lead) = p.first().map(|t| t.1.clone()) else { return };
        let mut g = content(p);
        if lead.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in p.iter_mut() {
                *c /= &g;
            }
        }
    }
    fn shrink(&self, coeffs: &mut [&mut BigInt]) {
        let mut g = BigInt::zero();
        for c in coeffs.iter() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if g > BigInt::one() {
            for c in coeffs.iter_mut() {
                **c /= &g;
            }
        }
    }
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeCoeffs {
    p: u64,
}

impl PrimeCoeffs {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !crate::algebra::field::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeCoeffs { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.try_into().expect("residue fits")
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl GbCoeffs for PrimeCoeffs {
    type C = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }
    fn is_one(&self, c: &u64) -> bool {
        *c == 1
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn lin(&self, s: &u64, a: &u64, u: &u64, b: &u64) -> u64 {
        (s * a % self.p + self.p - u * b % self.p) % self.p
    }
    fn cancel(&self, a: &u64, b: &u64) -> (u64, u64) {
        (1, a * self.inv(*b) % self.p)
    }
    fn normalize(&self, p: &mut Poly<u64>) {
        let Some(&(_, lead)) = p.first() else { return };
        if lead != 1 {
            let inv = self.inv(lead);
            for (_, c) in p.iter_mut() {
                *c = *c * inv % self.p;
            }
        }
    }
}

/// Rationals, for exact normal forms over `QQ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatCoeffs;

impl GbCoeffs for RatCoeffs {
    type C = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, c: &BigRational) -> bool {
        c.is_zero()
    }
    fn is_one(&self, c: &BigRational) -> bool {
        c.is_one()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn lin(&self, s: &BigRational, a: &BigRational, u: &BigRational, b: &BigRational) -> BigRational {
        s * a - u * b
    }
    fn cancel(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (BigRational::one(), a / b)
    }
    fn normalize(&self, p: &mut Poly<BigRational>) {
        let Some(lead) = p.first().map(|t| t.1.clone()) else { return };
        if !lead.is_one() {
            for (_, c) in p.iter_mut() {
                *c /= &lead;
            }
        }
    }
}

struct Entry<C> {
    poly: Poly<C>,
    sugar: u32,
    active: bool,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Reduction and completion under a fixed order.
#[derive(Clone, Debug)]
pub struct Engine<K: GbCoeffs> {
    pub coeffs: K,
    pub order: TermOrder,
    pub deadline: Option<Instant>,
}

impl<K: GbCoeffs> Engine<K> {
    pub fn new(coeffs: K, order: TermOrder) -> Self {
        Engine {
            coeffs,
            order,
            deadline: None,
        }
    }

    /// Sorts, merges duplicate monomials and drops zeros.
    pub fn canonical(&self, mut terms: Poly<K::C>) -> Poly<K::C> {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Poly<K::C> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.coeffs.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.coeffs.is_zero(c));
        out
    }

    /// `s * qf * f - u * qg * g`, merged in order.
    #[allow(clippy::too_many_arguments)]
    fn combine(
        &self,
        f: &[(Mono, K::C)],
        s: &K::C,
        qf: &Mono,
        g: &[(Mono, K::C)],
        u: &K::C,
        qg: &Mono,
    ) -> Result<Poly<K::C>> {
        let k = &self.coeffs;
        let s_one = k.is_one(s);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut next_f = if f.is_empty() { None } else { Some(f[0].0.mul(qf)?) };
        let mut next_g = if g.is_empty() { None } else { Some(g[0].0.mul(qg)?) };
        loop {
            match (next_f, next_g) {
                (None, None) => break,
                (Some(mf), ng) if ng.map_or(true, |mg| self.order.cmp(&mf, &mg).is_gt()) => {
                    let c = if s_one { f[i].1.clone() } else { k.mul(s, &f[i].1) };
                    out.push((mf, c));
                    i += 1;
                    next_f = if i < f.len() { Some(f[i].0.mul(qf)?) } else { None };
                }
                (Some(mf), Some(mg)) if mf == mg => {
                    let c = k.lin(s, &f[i].1, u, &g[j].1);
                    if !k.is_zero(&c) {
                        out.push((mf, c));
                    }
                    i += 1;
                    j += 1;
                    next_f = if i < f.len() { Some(f[i].0.mul(qf)?) } else { None };
                    next_g = if j < g.len() { Some(g[j].0.mul(qg)?) } else { None };
                }
                (_, Some(mg)) => {
                    out.push((mg, k.neg(&k.mul(u, &g[j].1))));
                    j += 1;
                    next_g = if j < g.len() { Some(g[j].0.mul(qg)?) } else { None };
                }
                (Some(_), None) => unreachable!(),
            }
        }
        Ok(out)
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout(
                "Gröbner basis computation exceeded its time limit".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Fully reduced normal form of `f` modulo `basis` (not normalized, so
    /// that over `ZZ` it is a multiple of the true remainder by a unit of
    /// `QQ`).
    pub fn reduce(&self, f: Poly<K::C>, basis: &[&[(Mono, K::C)]]) -> Result<Poly<K::C>> {
        let k = &self.coeffs;
        let order = self.order;
        // pending terms keyed by monomial; the heap yields candidates in
        // decreasing order and may hold stale duplicates
        let mut acc: FxHashMap<Mono, K::C> = FxHashMap::default();
        let mut heap: BinaryHeap<((u32, u128), Mono)> = BinaryHeap::with_capacity(f.len());
        for (m, c) in f {
            heap.push((order.key(&m), m));
            acc.insert(m, c);
        }
        let mut rem: Poly<K::C> = Vec::new();
        let mut steps = 0u32;
        while let Some((_, m)) = heap.pop() {
            let Some(c) = acc.remove(&m) else { continue };
            let Some(g) = basis.iter().find(|g| g[0].0.divides(&m)) else {
                rem.push((m, c));
                continue;
            };
            let (s, u) = k.cancel(&c, &g[0].1);
            if !k.is_one(&s) {
                for c in acc.values_mut().chain(rem.iter_mut().map(|(_, c)| c)) {
                    *c = k.mul(&s, c);
                }
            }
            let q = m.div(&g[0].0);
            let nu = k.neg(&u);
            for (gm, gc) in &g[1..] {
                let t = gm.mul(&q)?;
                let v = k.mul(&nu, gc);
                match acc.entry(t) {
                    Slot::Occupied(mut e) => {
                        let sum = k.add(e.get(), &v);
                        if k.is_zero(&sum) {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                    Slot::Vacant(e) => {
                        e.insert(v);
                        heap.push((order.key(&t), t));
                    }
                }
            }
            steps += 1;
            if steps % 32 == 0 {
                let mut refs: Vec<&mut K::C> =
                    acc.values_mut().chain(rem.iter_mut().map(|(_, c)| c)).collect();
                k.shrink(&mut refs);
                self.check_deadline()?;
            }
        }
        Ok(rem)
    }

    /// Normalized normal form.
    pub fn normal_form(&self, f: Poly<K::C>, basis: &[Poly<K::C>]) -> Result<Poly<K::C>> {
        let refs: Vec<&[(Mono, K::C)]> = basis.iter().map(|g| g.as_slice()).collect();
        let mut r = self.reduce(f, &refs)?;
        self.coeffs.normalize(&mut r);
        Ok(r)
    }

    /// Reduced Gröbner basis, normalized, sorted by increasing leading
    /// monomial. The unit ideal gives the single constant `1`.
    pub fn groebner(&self, gens: Vec<Poly<K::C>>) -> Result<Vec<Poly<K::C>>> {
        let mut store: Vec<Entry<K::C>> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut inputs: Vec<Poly<K::C>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        inputs.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        for g in inputs {
            let sugar = g.iter().map(|(m, _)| m.deg()).max().unwrap_or(0);
            let h = self.reduce_by_active(g, &store)?;
            if let Some(unit) = self.insert(&mut store, &mut pairs, h, sugar) {
                return Ok(vec![unit]);
            }
        }
        while !pairs.is_empty() {
            self.check_deadline()?;
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    p.sugar
                        .cmp(&q.sugar)
                        .then_with(|| self.order.cmp(&p.lcm, &q.lcm))
                        .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            let (f, g) = (&store[pair.i].poly, &store[pair.j].poly);
            let (s, u) = self.coeffs.cancel(&f[0].1, &g[0].1);
            let spoly = self.combine(
                &f[1..],
                &s,
                &pair.lcm.div(&f[0].0),
                &g[1..],
                &u,
                &pair.lcm.div(&g[0].0),
            )?;
            let h = self.reduce_by_active(spoly, &store)?;
            if let Some(unit) = self.insert(&mut store, &mut pairs, h, pair.sugar) {
                return Ok(vec![unit]);
            }
        }
        self.interreduce(store)
    }

    fn reduce_by_active(&self, f: Poly<K::C>, store: &[Entry<K::C>]) -> Result<Poly<K::C>> {
        let basis: Vec<&[(Mono, K::C)]> = store
            .iter()
            .filter(|e| e.active)
            .map(|e| e.poly.as_slice())
            .collect();
        let mut h = self.reduce(f, &basis)?;
        self.coeffs.normalize(&mut h);
        Ok(h)
    }

    /// Adds a reduced nonzero `h` and updates the pair set. Returns the unit
    /// polynomial if `h` is constant.
    fn insert(&self, store: &mut Vec<Entry<K::C>>, pairs: &mut Vec<Pair>, h: Poly<K::C>, sugar: u32) -> Option<Poly<K::C>> {
        if h.is_empty() {
            return None;
        }
        if h[0].0.is_one() {
            return Some(h);
        }
        let lh = h[0].0;
        let hidx = store.len();
        let cands: Vec<(usize, Mono)> = store
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| (i, e.poly[0].0.lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for (idx, &(g, l)) in cands.iter().enumerate() {
            let coprime = store[g].poly[0].0.coprime(&lh);
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        pairs.retain(|p| {
            let li = store[p.i].poly[0].0.lcm(&lh);
            let lj = store[p.j].poly[0].0.lcm(&lh);
            !lh.divides(&p.lcm) || li == p.lcm || lj == p.lcm
        });
        for (g, l) in kept {
            let lg = store[g].poly[0].0;
            if lg.coprime(&lh) {
                continue;
            }
            let s = (store[g].sugar + l.deg() - lg.deg()).max(sugar + l.deg() - lh.deg());
            pairs.push(Pair {
                i: g,
                j: hidx,
                lcm: l,
                sugar: s,
            });
        }
        for e in store.iter_mut().filter(|e| e.active) {
            if lh.divides(&e.poly[0].0) {
                e.active = false;
            }
        }
        store.push(Entry {
            poly: h,
            sugar,
            active: true,
        });
        None
    }

    fn interreduce(&self, store: Vec<Entry<K::C>>) -> Result<Vec<Poly<K::C>>> {
        let mut basis: Vec<Poly<K::C>> = store.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
        basis.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        let mut out = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<&[(Mono, K::C)]> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.as_slice())
                .collect();
            let mut r = self.reduce(basis[i].clone(), &others)?;
            self.coeffs.normalize(&mut r);
            out.push(r);
        }
        Ok(out)
    }
}
