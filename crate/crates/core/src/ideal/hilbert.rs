//! Hilbert series of monomial ideals and the dimension and degree they
//! determine.

use super::mono::Mono;

/// Numerator `N(t)` of `HS(R/I) = N(t) / (1 - t)^n`, lowest power first.
pub fn hilbert_numerator(gens: &[Mono], nvars: usize) -> Vec<i128> {
    let mut gens = minimalize(gens.to_vec());
    gens.sort_by_key(|m| (m.deg(), m.exponents(nvars)));
    numerator_rec(gens, nvars)
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| m.deg());
    gens.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

fn numerator_rec(gens: Vec<Mono>, nvars: usize) -> Vec<i128> {
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, g)| gens[i + 1..].iter().all(|h| g.coprime(h)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.deg() as usize + 1];
            f[0] = 1;
            f[g.deg() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    // pivot on the variable shared by the most non-linear generators
    let pivot = (0..nvars)
        .max_by_key(|&v| (gens.iter().filter(|g| g.exp(v) > 0 && g.deg() > 1).count(), std::cmp::Reverse(v)))
        .expect("at least one variable");
    let x = Mono::var(pivot);
    let mut with_x: Vec<Mono> = gens.iter().filter(|g| g.exp(pivot) == 0).copied().collect();
    with_x.push(x);
    let quotient = minimalize(gens.iter().map(|g| g.colon_var(pivot)).collect());
    let mut n = numerator_rec(minimalize(with_x), nvars);
    poly_add_shifted(&mut n, &numerator_rec(quotient, nvars), 1);
    while n.len() > 1 && n.last() == Some(&0) {
        n.pop();
    }
    n
}

/// Dimension and degree read off a Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub nvars: usize,
    /// `N(t)` over `(1 - t)^nvars`.
    pub numerator: Vec<i128>,
    /// Krull dimension of `R/I`; `None` for the unit ideal.
    pub affine_dimension: Option<usize>,
    /// Leading coefficient of the Hilbert polynomial times `(dim - 1)!`.
    pub degree: u128,
}

impl HilbertData {
    pub fn from_numerator(numerator: Vec<i128>, nvars: usize) -> Self {
        if numerator.iter().all(|&c| c == 0) {
            return HilbertData {
                nvars,
                numerator,
                affine_dimension: None,
                degree: 0,
            };
        }
        let mut q = numerator.clone();
        let mut factors = 0;
        while q.iter().sum::<i128>() == 0 {
            // divide by (1 - t): running sums
            let mut out = Vec::with_capacity(q.len() - 1);
            let mut acc = 0;
            for c in &q[..q.len() - 1] {
                acc += c;
                out.push(acc);
            }
            q = out;
            factors += 1;
        }
        let degree = q.iter().sum::<i128>();
        HilbertData {
            nvars,
            numerator,
            affine_dimension: Some(nvars - factors),
            degree: degree.try_into().expect("Hilbert degree is positive"),
        }
    }

    /// Dimension of the projective zero set; `-1` when it is empty.
    pub fn projective_dimension(&self) -> i64 {
        self.affine_dimension.map_or(-1, |d| d as i64 - 1)
    }

    pub fn codimension(&self) -> usize {
        self.nvars - self.affine_dimension.unwrap_or(0)
    }
}
