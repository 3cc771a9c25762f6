use super::spec::RankKind;
use crate::algebra::{FieldSpec, FqElement, LPoly};
use crate::error::{Error, Result};
use crate::lfun::{analytic_rank, extract_h, l_polynomial, rank_at_infinity, specialize_l, MatrixProvider};
use crate::univar::TwistPoly;

/// An `a`-polynomial reduced into `F_q`: exponents over `a0..am` and a
/// coefficient.
type Compiled = Vec<(Vec<u16>, FqElement)>;

/// Ranks of individual points, by the symbolic coefficients of `L_m`
/// reduced once into `F_q`.
pub struct PointEvaluator {
    field: FieldSpec,
    provider: MatrixProvider,
    kind: RankKind,
    /// `H[beta][alpha]`, nonzero ones only, for the rank at infinity.
    h: Vec<Vec<Compiled>>,
    max_exp: usize,
    /// `L_m` over `F_q[a, t]`, for the rank at one.
    l: Option<LPoly<FieldSpec>>,
}

impl PointEvaluator {
    pub fn new(provider: &MatrixProvider, field: &FieldSpec, kind: RankKind) -> Result<Self> {
        if let Some(q) = provider.q {
            if q != field.order() {
                return Err(Error::IncompatibleRing(format!("provider is for F{q}, census is over {field}")));
            }
        }
        let l = l_polynomial(provider);
        let na = provider.m + 1;
        let mut h: Vec<Vec<Compiled>> = vec![Vec::new(); l.coeffs().len()];
        let mut max_exp = 0;
        let mut lf = None;
        match kind {
            RankKind::AtInfinity => {
                for ((beta, _), poly) in extract_h(&l) {
                    let terms: Compiled = poly
                        .terms()
                        .iter()
                        .map(|(mono, c)| (mono.exponents()[..na].to_vec(), field.reduce_int(c)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    if terms.is_empty() {
                        continue;
                    }
                    for (e, _) in &terms {
                        max_exp = max_exp.max(e.iter().copied().max().unwrap_or(0) as usize);
                    }
                    h[beta].push(terms);
                }
            }
            RankKind::AtOne => {
                let f = field.clone();
                lf = Some(l.map(f.clone(), l.nvars(), |c| Ok(c.reduce_into(&f)))?);
            }
        }
        Ok(PointEvaluator {
            field: field.clone(),
            provider: provider.clone(),
            kind,
            h,
            max_exp,
            l: lf,
        })
    }

    pub fn kind(&self) -> RankKind {
        self.kind
    }

    pub fn provider(&self) -> &MatrixProvider {
        &self.provider
    }

    fn check(&self, p: &TwistPoly) -> Result<()> {
        if p.field() != &self.field || p.m() != self.provider.m {
            return Err(Error::IncompatibleRing(format!(
                "point {p} does not lie in A^{} over {}",
                self.provider.m + 1,
                self.field
            )));
        }
        Ok(())
    }

    /// Rank of `p` from the symbolic coefficients.
    pub fn rank(&self, p: &TwistPoly) -> Result<u32> {
        self.check(p)?;
        match self.kind {
            RankKind::AtInfinity => self.rank_inf_symbolic(p),
            RankKind::AtOne => {
                let l = self.l.as_ref().expect("built for rank at one");
                let mut values: Vec<Option<FqElement>> = p.coeffs().iter().map(|&c| Some(c)).collect();
                values.push(None);
                let f = self.field.clone();
                let lp = l.map(f, l.nvars(), |c| c.specialize_elems(&values))?;
                analytic_rank(&lp)
            }
        }
    }

    fn rank_inf_symbolic(&self, p: &TwistPoly) -> Result<u32> {
        let f = &self.field;
        // powers[j][e] = a_j^e
        let powers: Vec<Vec<FqElement>> = p
            .coeffs()
            .iter()
            .map(|&a| {
                let mut row = Vec::with_capacity(self.max_exp + 1);
                let mut x = f.one();
                for _ in 0..=self.max_exp {
                    row.push(x);
                    x = f.mul(x, a);
                }
                row
            })
            .collect();
        let eval = |poly: &Compiled| {
            poly.iter().fold(f.zero(), |acc, (e, c)| {
                let term = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .fold(*c, |t, (j, &x)| f.mul(t, powers[j][x as usize]));
                f.add(acc, term)
            })
        };
        let deg = (0..self.h.len())
            .rev()
            .find(|&beta| self.h[beta].iter().any(|poly| !eval(poly).is_zero()));
        let Some(deg) = deg else {
            return Err(Error::InvalidInput(format!("L vanishes identically at {p}")));
        };
        let k = self.provider.k;
        if deg > k {
            return Err(Error::ProviderInconsistency(format!(
                "deg_T L = {deg} exceeds the declared size k = {k} at {p}"
            )));
        }
        Ok((k - deg) as u32)
    }

    /// Rank of `p` from a determinant of the specialized matrix.
    pub fn rank_by_determinant(&self, p: &TwistPoly) -> Result<u32> {
        self.check(p)?;
        let l = specialize_l(&self.provider, p)?;
        match self.kind {
            RankKind::AtOne => analytic_rank(&l),
            RankKind::AtInfinity => Ok(rank_at_infinity(&l, self.provider.k)? as u32),
        }
    }
}
