use std::collections::BTreeMap;

use super::det::SquareMatrix;
use super::provider::MatrixProvider;
use crate::algebra::{CoeffRing, FieldSpec, FqElement, FqPoly, Integers, LPoly, Var, ZPoly};
use crate::error::{Error, Result};
use crate::univar::TwistPoly;

/// `L_m = det(I_k - M T)` over `ZZ[a, t]`.
pub fn l_polynomial(provider: &MatrixProvider) -> LPoly<Integers> {
    let nvars = provider.nvars();
    let one = ZPoly::one(Integers, nvars);
    LPoly::new(Integers, nvars, provider.entries.reversed_char_poly(&one))
}

/// `H[(beta, alpha)]` is the `a`-polynomial multiplying `t^alpha T^beta`.
/// Only nonzero coefficients are present.
pub fn extract_h(l: &LPoly<Integers>) -> BTreeMap<(usize, usize), ZPoly> {
    let mut out = BTreeMap::new();
    for (beta, c) in l.coeffs().iter().enumerate() {
        for (alpha, h) in c.split_by_t().into_iter().enumerate() {
            if !h.is_zero() {
                out.insert((beta, alpha), h);
            }
        }
    }
    out
}

/// Rebuilds `sum H t^alpha T^beta`.
pub fn assemble_h(h: &BTreeMap<(usize, usize), ZPoly>, nvars: usize) -> LPoly<Integers> {
    let top = h.keys().map(|(b, _)| *b + 1).max().unwrap_or(0);
    let mut coeffs = vec![ZPoly::zero(Integers, nvars); top];
    let t = ZPoly::var(Integers, nvars, Var::T);
    for (&(beta, alpha), poly) in h {
        coeffs[beta] = &coeffs[beta] + &(poly * &t.pow(alpha as u32));
    }
    LPoly::new(Integers, nvars, coeffs)
}

/// Checks the field and pads the twist to the provider's `m`.
pub fn align_twist(provider: &MatrixProvider, p: &TwistPoly) -> Result<TwistPoly> {
    let field = p.field();
    if let Some(q) = provider.q {
        if q != field.order() {
            return Err(Error::IncompatibleRing(format!(
                "provider is for F{q}, twist is over {field}"
            )));
        }
    }
    if p.m() > provider.m {
        if let Ok(trimmed) = p.with_bound(provider.m) {
            return Ok(trimmed);
        }
        return Err(Error::InvalidInput(format!(
            "twist {p} has degree above the provider bound m={}",
            provider.m
        )));
    }
    p.with_bound(provider.m)
}

fn assignment(p: &TwistPoly) -> Vec<Option<FqElement>> {
    let mut values: Vec<Option<FqElement>> = p.coeffs().iter().map(|&c| Some(c)).collect();
    values.push(None);
    values
}

/// Specializes the entries at the twist, then takes the determinant over
/// `F_q[t]`.
pub fn specialize_l(provider: &MatrixProvider, p: &TwistPoly) -> Result<LPoly<FieldSpec>> {
    let p = align_twist(provider, p)?;
    let field = p.field().clone();
    let nvars = provider.nvars();
    let values = assignment(&p);
    let data = provider
        .entries
        .entries()
        .iter()
        .map(|e| e.reduce_into(&field).specialize_elems(&values))
        .collect::<Result<Vec<_>>>()?;
    let matrix = SquareMatrix::new(provider.k, data);
    let one = FqPoly::one(field.clone(), nvars);
    Ok(LPoly::new(field, nvars, matrix.reversed_char_poly(&one)))
}

/// Specializes an already computed symbolic `L_m` at the twist.
pub fn specialize_symbolic(l: &LPoly<Integers>, provider: &MatrixProvider, p: &TwistPoly) -> Result<LPoly<FieldSpec>> {
    let p = align_twist(provider, p)?;
    let field = p.field().clone();
    let values = assignment(&p);
    l.map(field.clone(), l.nvars(), |c| c.reduce_into(&field).specialize_elems(&values))
}

/// Order of vanishing at `T = 1`.
pub fn analytic_rank<R: CoeffRing>(l: &LPoly<R>) -> Result<u32> {
    let one = l.ring().one();
    analytic_rank_at(l, &one)
}

/// Largest `e` with `(T - a)^e | L`, by repeated division by `T - a`.
pub fn analytic_rank_at<R: CoeffRing>(l: &LPoly<R>, a: &R::Elem) -> Result<u32> {
    if l.is_zero() {
        return Err(Error::InvalidInput("the zero L-polynomial has no rank".into()));
    }
    let mut cur = l.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = cur.div_linear(a);
        if !rem.is_zero() {
            return Ok(e);
        }
        e += 1;
        cur = quot;
    }
}

/// `k - deg_T L`.
pub fn rank_at_infinity<R: CoeffRing>(l: &LPoly<R>, k: usize) -> Result<usize> {
    let Some(deg) = l.degree() else {
        return Err(Error::InvalidInput("the zero L-polynomial has no degree".into()));
    };
    if deg > k {
        return Err(Error::ProviderInconsistency(format!(
            "deg_T L = {deg} exceeds the declared size k = {k}"
        )));
    }
    Ok(k - deg)
}
