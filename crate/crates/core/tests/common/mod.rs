//! Strategies and independent oracles shared by the integration tests.
#![allow(dead_code)]

use carlitz_core::algebra::{FqPoly, Integers, LPoly, Monomial, MultiPoly, ZPoly};
use carlitz_core::lfun::RingElement;
use carlitz_core::FieldSpec;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// Random integer polynomial with up to `terms` terms of degree <= 3 per
/// variable.
pub fn zpoly(nvars: usize, terms: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((prop::collection::vec(0u16..=3, nvars), -20i64..=20), 0..=terms).prop_map(move |ts| {
        MultiPoly::from_terms(
            Integers,
            nvars,
            ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), BigInt::from(c))),
        )
    })
}

/// Random polynomial in `a0..a(na-1)` only (the `t` slot stays zero).
pub fn apoly(na: usize, terms: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((prop::collection::vec(0u16..=3, na), -20i64..=20), 0..=terms).prop_map(move |ts| {
        MultiPoly::from_terms(
            Integers,
            na + 1,
            ts.into_iter().map(|(mut e, c)| {
                e.push(0);
                (Monomial::from_exponents(&e), BigInt::from(c))
            }),
        )
    })
}

pub fn random_zpoly<G: Rng>(rng: &mut G, nvars: usize, terms: usize) -> ZPoly {
    MultiPoly::from_terms(
        Integers,
        nvars,
        (0..rng.gen_range(0..=terms)).map(|_| {
            let e: Vec<u16> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
            (Monomial::from_exponents(&e), BigInt::from(rng.gen_range(-9i64..=9)))
        }),
    )
}

/// Laplace expansion along the first row.
pub fn cofactor_det<E: RingElement>(rows: &[Vec<E>]) -> E {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = rows[0][0].zero_like();
    for j in 0..n {
        let minor: Vec<Vec<E>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = rows[0][j].mul_ref(&cofactor_det(&minor));
        acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    acc
}

/// Order of vanishing at `T = 1` via the Taylor expansion `L(1 + S)`.
pub fn taylor_rank(l: &LPoly<FieldSpec>) -> u32 {
    let field = l.ring().clone();
    let nvars = l.nvars();
    let zero = FqPoly::zero(field.clone(), nvars);
    // coefficients of S^j: sum_beta binom(beta, j) c_beta
    let deg = l.coeffs().len();
    for j in 0..deg {
        let mut s = zero.clone();
        for (beta, c) in l.coeffs().iter().enumerate().skip(j) {
            let b = binom(beta as u64, j as u64) % field.characteristic() as u64;
            let scalar = field.from_i64(b as i64);
            s = &s + &c.scale(&scalar);
        }
        if !s.is_zero() {
            return j as u32;
        }
    }
    panic!("zero L-polynomial");
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Random nonzero polynomial in `F_q[t]` of degree <= `d`, embedded with
/// `nvars` slots (t last).
pub fn random_fq_t<G: Rng>(rng: &mut G, field: &FieldSpec, nvars: usize, d: usize) -> FqPoly {
    MultiPoly::from_terms(
        field.clone(),
        nvars,
        (0..=d).map(|e| {
            let mut ex = vec![0u16; nvars];
            ex[nvars - 1] = e as u16;
            (Monomial::from_exponents(&ex), field.elem(rng.gen_range(0..field.order())).unwrap())
        }),
    )
}

/// Random L-polynomial over `F_q[t]`, of T-degree <= `d`, with constant
/// term 1.
pub fn random_lpoly<G: Rng>(rng: &mut G, field: &FieldSpec, d: usize) -> LPoly<FieldSpec> {
    let nvars = 2;
    let mut coeffs = vec![FqPoly::one(field.clone(), nvars)];
    for _ in 0..rng.gen_range(0..=d) {
        coeffs.push(random_fq_t(rng, field, nvars, 2));
    }
    LPoly::new(field.clone(), nvars, coeffs)
}

/// `(1 - T)^e` as an L-polynomial.
pub fn one_minus_t_pow(field: &FieldSpec, e: u32) -> LPoly<FieldSpec> {
    let nvars = 2;
    let base = LPoly::new(
        field.clone(),
        nvars,
        vec![FqPoly::one(field.clone(), nvars), FqPoly::constant(field.clone(), nvars, field.from_i64(-1))],
    );
    (0..e).fold(LPoly::one(field.clone(), nvars), |acc, _| acc.checked_mul(&base).unwrap())
}
