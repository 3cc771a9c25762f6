//! Squarefree decomposition and Cantor–Zassenhaus factorization over `F_q`.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{uni_gcd, UniPoly};
use crate::algebra::{FieldSpec, FqElement};
use crate::error::{Error, Result};

/// Seed of the equal-degree splitting sequence; fixed so factorizations are
/// reproducible.
pub const SPLIT_SEED: u64 = 0x00C4_A711_7251;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: FqElement,
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then by coefficients from the top down.
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// `lead * prod f^e`.
    pub fn expand(&self, field: &FieldSpec) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(field.clone(), self.lead), |acc, (f, e)| {
                acc.mul(&f.pow(*e as u64))
            })
    }
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree `(g, e)` with `monic(f) = prod g^e`. Each `e` occurs at most
/// once per level of the `p`-th root recursion.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("squarefree decomposition of zero".into()));
    }
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out)?;
    Ok(out)
}

fn sqf_rec(f: &UniPoly, scale: u32, out: &mut Vec<(UniPoly, u32)>) -> Result<()> {
    if f.degree() == Some(0) {
        return Ok(());
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power
        return sqf_rec(&f.pth_root(), scale * p, out);
    }
    let mut c = uni_gcd(f, &df)?;
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = uni_gcd(&w, &c)?;
        let fac = w.exact_div(&y);
        if fac.degree() != Some(0) {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        sqf_rec(&c.pth_root(), scale * p, out)?;
    }
    Ok(())
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree: `(d, product of all degree-d factors)`.
pub fn distinct_degree(f: &UniPoly) -> Result<Vec<(usize, UniPoly)>> {
    let field = f.field().clone();
    let q = BigUint::from(field.order());
    let x = UniPoly::x(field.clone());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut d = 0usize;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = h.pow_mod(&q, &rest)?;
        let g = uni_gcd(&rest, &h.sub(&x))?;
        if g.degree() != Some(0) {
            rest = rest.exact_div(&g);
            h = h.rem(&rest)?;
            out.push((d, g));
        }
    }
    if let Some(deg) = rest.degree().filter(|&d| d > 0) {
        out.push((deg, rest));
    }
    Ok(out)
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<UniPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order();
    let p = field.characteristic();
    loop {
        let coeffs: Vec<FqElement> = (0..n).map(|_| FqElement(rng.gen_range(0..q))).collect();
        let a = UniPoly::new(field.clone(), coeffs);
        if a.degree().map_or(true, |k| k == 0) {
            continue;
        }
        let probe = if p == 2 {
            // absolute trace of F_{q^d} over F_2: a + a^2 + ... + a^(2^(ed - 1))
            let mut acc = a.rem(f)?;
            let mut term = acc.clone();
            let two = BigUint::from(2u32);
            for _ in 1..(field.degree() as usize * d) {
                term = term.pow_mod(&two, f)?;
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f)?.sub(&UniPoly::one(field.clone()))
        };
        let g = match uni_gcd(f, &probe) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut left = equal_degree(&g, d, rng)?;
            left.extend(equal_degree(&f.exact_div(&g), d, rng)?);
            return Ok(left);
        }
    }
}

fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Complete factorization of a nonzero polynomial.
pub fn factorize(f: &UniPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("factorization of zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for (d, block) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                match factors.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, e)) => *e += mult,
                    None => factors.push((g, mult)),
                }
            }
        }
    }
    factors.sort_by(|a, b| factor_order(&a.0, &b.0));
    Ok(Factorization {
        lead: f.lead(),
        factors,
    })
}

/// Whether no irreducible factor of `f` has multiplicity `>= r`.
pub fn is_powerfree_poly(f: &UniPoly, r: u32) -> Result<bool> {
    if r == 0 {
        return Err(Error::InvalidInput("power bound must be positive".into()));
    }
    Ok(squarefree_decomposition(f)?.iter().all(|(_, e)| *e < r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &FieldSpec, c: &[u32]) -> UniPoly {
        UniPoly::from_reprs(field, c).unwrap()
    }

    #[test]
    fn irreducible_quadratic() {
        let f3 = FieldSpec::new(3).unwrap();
        let fac = factorize(&poly(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f3, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn difference_of_squares() {
        let f3 = FieldSpec::new(3).unwrap();
        let fac = factorize(&poly(&f3, &[2, 0, 1])).unwrap();
        // x + 1 sorts before x + 2 (coefficients compared top-down)
        assert_eq!(
            fac.factors,
            vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[2, 1]), 1)]
        );
    }

    #[test]
    fn x9_minus_x_is_all_low_degree_irreducibles() {
        let f3 = FieldSpec::new(3).unwrap();
        let mut c = vec![0u32; 10];
        c[9] = 1;
        c[1] = 2;
        let f = poly(&f3, &c);
        let fac = factorize(&f).unwrap();
        // brute-force oracle: every monic polynomial of degree 1 or 2 with no
        // root among the degree-2 candidates
        let mut expected = Vec::new();
        for a in 0..3 {
            expected.push(poly(&f3, &[a, 1]));
        }
        for a in 0..3 {
            for b in 0..3 {
                let g = poly(&f3, &[a, b, 1]);
                if f3.elements().all(|x| !g.eval(x).is_zero()) {
                    expected.push(g);
                }
            }
        }
        assert_eq!(fac.factors.len(), expected.len());
        assert_eq!(expected.len(), 6);
        for g in &expected {
            assert!(fac.factors.contains(&(g.clone(), 1)), "{g} missing");
        }
        let product = expected
            .iter()
            .fold(UniPoly::one(f3.clone()), |acc, g| acc.mul(g));
        assert_eq!(product, f);
    }

    #[test]
    fn powerfree_examples() {
        let f3 = FieldSpec::new(3).unwrap();
        // x^2 (x + 1)
        assert!(!is_powerfree_poly(&poly(&f3, &[0, 0, 1, 1]), 2).unwrap());
        // x (x + 1)(x + 2) = x^3 - x
        assert!(is_powerfree_poly(&poly(&f3, &[0, 2, 0, 1]), 2).unwrap());
        // x^3: zero derivative, p-th power branch
        assert!(!is_powerfree_poly(&poly(&f3, &[0, 0, 0, 1]), 2).unwrap());
        assert!(is_powerfree_poly(&poly(&f3, &[]), 2).is_err());
    }

    #[test]
    fn extension_field_factorization() {
        let f4 = FieldSpec::new(4).unwrap();
        // x^4 - x splits into all four linear factors over F4
        let f = poly(&f4, &[0, 1, 0, 0, 1]);
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        assert_eq!(fac.expand(&f4), f);
    }

    #[test]
    fn deterministic_output() {
        let f5 = FieldSpec::new(5).unwrap();
        let f = poly(&f5, &[3, 1, 4, 1, 0, 2, 1, 1]);
        assert_eq!(factorize(&f).unwrap(), factorize(&f).unwrap());
    }
}
