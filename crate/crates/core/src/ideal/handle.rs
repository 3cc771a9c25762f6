use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gb::{Engine, GbCoeffs, IntCoeffs, Poly, RatCoeffs};
use super::hilbert::{hilbert_numerator, HilbertData};
use super::mono::{Mono, TermOrder, MAX_VARS};
use crate::algebra::{format_poly, Monomial, QPoly, Rationals, Var, ZPoly};
use crate::error::{Error, Result};
use crate::lfun::{l_polynomial, schur_provider};

pub const DEFAULT_KAPPA_MAX: u32 = 6;

/// An ideal of `QQ[a0, ..., am]` with lazily computed, write-once caches.
///
/// Generators are stored as [`QPoly`] in the usual ring layout, so the `t`
/// slot exists but must not occur.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    num_vars: usize,
    generators: Vec<QPoly>,
    provenance: String,
    time_limit: Option<Duration>,
    grevlex: OnceLock<Vec<Poly<BigInt>>>,
    lex: OnceLock<Vec<Poly<BigInt>>>,
    hilbert: OnceLock<HilbertData>,
}

fn to_internal(p: &QPoly, num_vars: usize) -> Result<Poly<BigInt>> {
    let t = p.t_index();
    let ints = p.primitive_integer();
    let mut terms = Vec::with_capacity(ints.num_terms());
    for (m, c) in ints.terms() {
        if m.exp(t) > 0 {
            return Err(Error::InvalidInput(format!("{p} involves t; ideals live in QQ[a]")));
        }
        terms.push((Mono::from_exps(&m.exponents()[..num_vars])?, c.clone()));
    }
    Ok(Engine::new(IntCoeffs, TermOrder::GrevLex).canonical(terms))
}

fn to_rational_internal(p: &QPoly, num_vars: usize, order: TermOrder) -> Result<Poly<BigRational>> {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| Ok((Mono::from_exps(&m.exponents()[..num_vars])?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Engine::new(RatCoeffs, order).canonical(terms))
}

fn from_internal<C: Clone>(p: &Poly<C>, num_vars: usize, to_q: impl Fn(&C) -> BigRational) -> QPoly {
    let lead = p.first().map(|(_, c)| to_q(c)).unwrap_or_else(BigRational::one);
    QPoly::from_terms(
        Rationals,
        num_vars + 1,
        p.iter().map(|(m, c)| {
            let mut e = m.exponents(num_vars);
            e.push(0);
            (Monomial::from_exponents(&e), to_q(c) / &lead)
        }),
    )
}

impl IdealHandle {
    pub fn new(generators: Vec<QPoly>, provenance: impl Into<String>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidInput(
                "an ideal handle needs at least one generator (use 0 for the zero ideal)".into(),
            ));
        };
        let nvars = first.nvars();
        if generators.iter().any(|g| g.nvars() != nvars) {
            return Err(Error::IncompatibleRing("generators live in different rings".into()));
        }
        let num_vars = nvars - 1;
        if num_vars + 1 > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "at most {} a-variables are supported",
                MAX_VARS - 1
            )));
        }
        for g in &generators {
            to_internal(g, num_vars)?;
        }
        Ok(IdealHandle {
            num_vars,
            generators,
            provenance: provenance.into(),
            time_limit: None,
            grevlex: OnceLock::new(),
            lex: OnceLock::new(),
            hilbert: OnceLock::new(),
        })
    }

    pub fn from_integer(generators: &[ZPoly], provenance: impl Into<String>) -> Result<Self> {
        Self::new(generators.iter().map(ZPoly::to_rational).collect(), provenance)
    }

    /// Gröbner computations started after this call fail with
    /// [`Error::Timeout`] once the limit passes.
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[QPoly] {
        &self.generators
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Nonzero generators.
    pub fn num_generators(&self) -> usize {
        self.generators.iter().filter(|g| !g.is_zero()).count()
    }

    pub fn is_projective(&self) -> bool {
        self.generators.iter().all(|g| g.total_degree_homogeneous().is_some())
    }

    fn engine<K: GbCoeffs>(&self, coeffs: K, order: TermOrder) -> Engine<K> {
        Engine {
            coeffs,
            order,
            deadline: self.time_limit.map(|d| Instant::now() + d),
        }
    }

    fn internal_basis(&self, order: TermOrder) -> Result<&Vec<Poly<BigInt>>> {
        let cell = match order {
            TermOrder::GrevLex => &self.grevlex,
            TermOrder::Lex => &self.lex,
        };
        if let Some(b) = cell.get() {
            return Ok(b);
        }
        let engine = self.engine(IntCoeffs, order);
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let p = to_internal(g, self.num_vars)?;
                Ok(engine.canonical(p))
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = engine.groebner(gens)?;
        Ok(cell.get_or_init(|| basis))
    }

    /// Reduced Gröbner basis, monic, by increasing leading monomial.
    pub fn groebner(&self, order: TermOrder) -> Result<Vec<QPoly>> {
        Ok(self
            .internal_basis(order)?
            .iter()
            .map(|g| from_internal(g, self.num_vars, |c| BigRational::from_integer(c.clone())))
            .collect())
    }

    /// Exact normal form over `QQ` with respect to the grevlex basis.
    pub fn normal_form(&self, f: &QPoly) -> Result<QPoly> {
        if f.nvars() != self.num_vars + 1 {
            return Err(Error::IncompatibleRing("polynomial and ideal rings differ".into()));
        }
        let engine = self.engine(RatCoeffs, TermOrder::GrevLex);
        let basis = self
            .groebner(TermOrder::GrevLex)?
            .iter()
            .map(|g| to_rational_internal(g, self.num_vars, TermOrder::GrevLex))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[(Mono, BigRational)]> = basis.iter().map(|g| g.as_slice()).collect();
        let f = to_rational_internal(f, self.num_vars, TermOrder::GrevLex)?;
        let r = engine.reduce(f, &refs)?;
        Ok(QPoly::from_terms(
            Rationals,
            self.num_vars + 1,
            r.iter().map(|(m, c)| {
                let mut e = m.exponents(self.num_vars);
                e.push(0);
                (Monomial::from_exponents(&e), c.clone())
            }),
        ))
    }

    pub fn contains(&self, f: &QPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn hilbert_data(&self) -> Result<&HilbertData> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        if !self.is_projective() {
            return Err(Error::InvalidInput(
                "Hilbert data needs homogeneous generators".into(),
            ));
        }
        let leads: Vec<Mono> = self.internal_basis(TermOrder::GrevLex)?.iter().map(|g| g[0].0).collect();
        let data = HilbertData::from_numerator(hilbert_numerator(&leads, self.num_vars), self.num_vars);
        Ok(self.hilbert.get_or_init(|| data))
    }

    /// Codimension equals the number of nonzero generators.
    pub fn is_complete_intersection(&self) -> Result<bool> {
        Ok(self.hilbert_data()?.codimension() == self.num_generators())
    }

    /// Whether `f` vanishes on the zero set, via `1 in (I, 1 - y f)`.
    pub fn radical_membership(&self, f: &QPoly) -> Result<bool> {
        if f.nvars() != self.num_vars + 1 {
            return Err(Error::IncompatibleRing("polynomial and ideal rings differ".into()));
        }
        let y = Mono::var(self.num_vars);
        let mut gens = self
            .generators
            .iter()
            .map(|g| to_internal(g, self.num_vars))
            .collect::<Result<Vec<_>>>()?;
        let fi = to_internal(f, self.num_vars)?;
        let mut rab: Poly<BigInt> = vec![(Mono::ONE, BigInt::one())];
        for (m, c) in &fi {
            rab.push((m.mul(&y)?, -c));
        }
        let engine = self.engine(IntCoeffs, TermOrder::GrevLex);
        gens.push(engine.canonical(rab));
        let gens = gens.into_iter().map(|g| engine.canonical(g)).collect();
        let basis = engine.groebner(gens)?;
        Ok(basis.len() == 1 && basis[0][0].0.is_one())
    }

    /// Smallest `kappa <= kappa_max` with `f^kappa in I`.
    pub fn kappa_search(&self, f: &QPoly, kappa_max: u32) -> Result<Option<u32>> {
        if !self.radical_membership(f)? {
            return Ok(None);
        }
        // f^k = NF(f^(k-1)) * f modulo I
        let mut power = QPoly::one(Rationals, self.num_vars + 1);
        for kappa in 1..=kappa_max {
            power = self.normal_form(&(&power * f))?;
            if power.is_zero() {
                return Ok(Some(kappa));
            }
        }
        Ok(None)
    }

    /// Provenance header followed by one generator per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for line in self.provenance.lines() {
            writeln!(s, "# {line}").unwrap();
        }
        for g in &self.generators {
            writeln!(s, "{}", format_poly(g)).unwrap();
        }
        s
    }
}

trait HomogeneousExt {
    fn total_degree_homogeneous(&self) -> Option<u32>;
}

impl HomogeneousExt for QPoly {
    fn total_degree_homogeneous(&self) -> Option<u32> {
        self.homogeneous_degree(|_| true)
    }
}

/// Table of the T-coefficients of `L_m` for diagnostics.
fn coefficient_table(m: usize) -> Result<String> {
    let l = l_polynomial(&schur_provider(m)?);
    let mut s = String::from("beta  a-degree  terms\n");
    for (beta, c) in l.coeffs().iter().enumerate() {
        let deg = c
            .a_homogeneous_degree()
            .map_or("mixed".to_string(), |d| d.to_string());
        writeln!(s, "{beta:>4}  {deg:>8}  {:>5}", c.num_terms()).unwrap();
    }
    Ok(s)
}

/// The `T`-coefficients of the built-in `L_m` whose `a`-degrees are
/// `m-1, m-2, ..., m-i`, as `(beta, H_beta)` pairs.
pub fn variety_window(m: usize, i: usize) -> Result<Vec<(usize, ZPoly)>> {
    if m < 2 || i == 0 || i >= m {
        return Err(Error::WindowSelection {
            reason: format!("need 1 <= i <= m-1, got m={m}, i={i}"),
            diagnostic: if m >= 1 { coefficient_table(m)? } else { String::new() },
        });
    }
    let l = l_polynomial(&schur_provider(m)?);
    let mut out = Vec::with_capacity(i);
    for d in (m - i..m).rev() {
        let found = l.coeffs().iter().enumerate().find(|(_, c)| {
            !c.is_zero() && c.a_homogeneous_degree() == Some(d as u32) && c.degree_in(c.t_index()).unwrap_or(0) == 0
        });
        match found {
            Some((beta, c)) => out.push((beta, c.clone())),
            None => {
                return Err(Error::WindowSelection {
                    reason: format!("no nonzero coefficient of a-degree {d} in L_{m}"),
                    diagnostic: coefficient_table(m)?,
                })
            }
        }
    }
    Ok(out)
}

/// Ideal of the coefficients of `L_m` of `a`-degrees `m-1, ..., m-i`.
pub fn variety_ideal(m: usize, i: usize) -> Result<IdealHandle> {
    let window = variety_window(m, i)?;
    let provider = schur_provider(m)?;
    let betas: Vec<String> = window.iter().map(|(b, _)| b.to_string()).collect();
    let provenance = format!(
        "X({m},{i}): provider {} (builtin-schur-n0, k={m})\nwindow: T-coefficients beta = {} of a-degrees {}..{}; the top coefficient beta = {m} is not used",
        provider.provider_id(),
        betas.join(","),
        m - 1,
        m - i,
    );
    let gens: Vec<ZPoly> = window.into_iter().map(|(_, h)| h).collect();
    IdealHandle::from_integer(&gens, provenance)
}

/// Whether `variety_ideal(m+1, i)` restricted to `a_{m+1} = 0` and
/// `variety_ideal(m, i)` have the same zero set, by mutual radical
/// membership of generators.
pub fn ideal_nesting_check(m: usize, i: usize) -> Result<bool> {
    if i == 0 {
        return Ok(true);
    }
    let small = variety_ideal(m, i)?;
    let big = variety_ideal(m + 1, i)?;
    let restricted = big
        .generators()
        .iter()
        .map(|g| {
            g.specialize(&[(Var::A(m + 1), crate::algebra::Scalar::Int(BigInt::zero()))])?
                .with_a_vars(m + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let restricted = IdealHandle::new(restricted, format!("X({},{i}) on a{} = 0", m + 1, m + 1))?;
    for g in restricted.generators() {
        if !small.radical_membership(g)? {
            return Ok(false);
        }
    }
    for g in small.generators() {
        if !restricted.radical_membership(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn q(n: usize, s: &str) -> QPoly {
        parse_poly(Rationals, n + 1, s).unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> IdealHandle {
        IdealHandle::new(gens.iter().map(|g| q(n, g)).collect(), "test").unwrap()
    }

    fn texts(v: &[QPoly]) -> Vec<String> {
        v.iter().map(format_poly).collect()
    }

    #[test]
    fn groebner_examples() {
        assert_eq!(texts(&ideal(1, &["a0"]).groebner(TermOrder::GrevLex).unwrap()), ["a0"]);
        let b = ideal(3, &["a0*a1", "a0*a2"]).groebner(TermOrder::GrevLex).unwrap();
        assert_eq!(texts(&b), ["a0*a1", "a0*a2"]);
        // with a0 < a1 the leading terms a0^2, a1^2 are coprime, so the
        // generators already form a basis; a1^3 is a member all the same
        let i = ideal(2, &["a0^2", "a0*a1 + a1^2"]);
        assert_eq!(texts(&i.groebner(TermOrder::GrevLex).unwrap()), ["a0^2", "a1^2 + a0*a1"]);
        assert!(i.contains(&q(2, "a1^3")).unwrap());
        // the same ideal with the roles of the variables exchanged
        let b = ideal(2, &["a1^2", "a0*a1 + a0^2"]).groebner(TermOrder::GrevLex).unwrap();
        assert!(texts(&b).contains(&"a0^3".to_string()), "{:?}", texts(&b));
        let b = ideal(2, &["2*a0 + 4*a1"]).groebner(TermOrder::Lex).unwrap();
        assert_eq!(texts(&b), ["a1 + 1/2*a0"]);
    }

    #[test]
    fn hilbert_examples() {
        let h = ideal(5, &["a0"]);
        let d = h.hilbert_data().unwrap();
        assert_eq!((d.projective_dimension(), d.degree), (3, 1));
        let h = ideal(3, &["a0^2", "a1"]);
        assert_eq!(h.hilbert_data().unwrap().degree, 2);
        assert!(ideal(2, &["a0 + a1^2"]).hilbert_data().is_err());
    }

    #[test]
    fn complete_intersection_examples() {
        assert!(ideal(2, &["a0", "a1"]).is_complete_intersection().unwrap());
        assert!(!ideal(3, &["a0*a1", "a0*a2", "a1*a2"]).is_complete_intersection().unwrap());
    }

    #[test]
    fn radical_examples() {
        assert!(ideal(2, &["a0^2"]).radical_membership(&q(2, "a0")).unwrap());
        assert!(!ideal(2, &["a0"]).radical_membership(&q(2, "a1")).unwrap());
        assert!(ideal(2, &["a0^2", "a1^2"]).radical_membership(&q(2, "a0 + a1")).unwrap());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(ideal(2, &["a0"]).kappa_search(&q(2, "a0"), 6).unwrap(), Some(1));
        assert_eq!(ideal(2, &["a0^3"]).kappa_search(&q(2, "a0"), 6).unwrap(), Some(3));
        assert_eq!(ideal(2, &["a0^2", "a1^2"]).kappa_search(&q(2, "a0*a1"), 6).unwrap(), Some(2));
        assert_eq!(ideal(2, &["a0^3"]).kappa_search(&q(2, "a0"), 2).unwrap(), None);
        assert_eq!(ideal(2, &["a0"]).kappa_search(&q(2, "a1"), 6).unwrap(), None);
    }

    #[test]
    fn normal_form_is_exact_over_q() {
        let h = ideal(2, &["2*a0 - 3*a1"]);
        // the leading term is a1, and a1 = 2/3 a0 modulo I
        assert_eq!(format_poly(&h.normal_form(&q(2, "a1")).unwrap()), "2/3*a0");
        assert_eq!(format_poly(&h.normal_form(&q(2, "a0")).unwrap()), "a0");
    }

    #[test]
    fn small_variety_ideals() {
        let x = variety_ideal(2, 1).unwrap();
        assert_eq!(texts(x.generators()), ["-a2 - a1"]);
        let x = variety_ideal(4, 1).unwrap();
        assert_eq!(x.generators()[0].total_degree(), Some(3));
        assert!(x.provenance().contains("beta = 3"));
        assert!(matches!(variety_ideal(4, 4), Err(Error::WindowSelection { .. })));
        assert!(matches!(variety_ideal(4, 0), Err(Error::WindowSelection { .. })));
    }

    #[test]
    fn degree_identity_small() {
        for (m, i, deg) in [(3, 1, 2), (3, 2, 2), (4, 1, 3), (4, 2, 6), (4, 3, 6)] {
            let x = variety_ideal(m, i).unwrap();
            assert_eq!(x.hilbert_data().unwrap().degree, deg, "m={m} i={i}");
        }
    }

    #[test]
    fn nesting_degenerate_and_small() {
        assert!(ideal_nesting_check(3, 0).unwrap());
        // the restricted window of L_{m+1} is shifted by one against L_m's
        assert!(!ideal_nesting_check(3, 1).unwrap());
    }
}
