//! Division-free characteristic polynomials (Berkowitz).

use crate::algebra::{CoeffRing, MultiPoly};
use crate::univar::UniPoly;

/// Element of a commutative ring that carries its own ring context.
pub trait RingElement: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn neg_ref(&self) -> Self {
        self.zero_like().sub_ref(self)
    }
}

impl<R: CoeffRing> RingElement for MultiPoly<R> {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.ring().clone(), self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.ring().clone(), self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl RingElement for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.field().clone())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.field().clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl RingElement for i128 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: RingElement> SquareMatrix<E> {
    /// # Panics
    /// If `data.len()` is not a perfect square of `n`.
    pub fn new(n: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must have n^2 entries");
        SquareMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n).map(|idx| self.get(idx % n, idx / n).clone()).collect();
        SquareMatrix { n, data }
    }

    pub fn map<F: RingElement>(&self, f: impl Fn(&E) -> F) -> SquareMatrix<F> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Coefficients `c_0 = 1, c_1, ..., c_n` of `det(I - A T) = sum c_j T^j`,
    /// i.e. of `det(x I - A) = sum c_j x^(n - j)`. Uses only ring operations,
    /// so it is valid over any commutative ring. `one` fixes the ring for the
    /// empty matrix.
    pub fn reversed_char_poly(&self, one: &E) -> Vec<E> {
        let zero = one.zero_like();
        let mut v: Vec<E> = vec![one.clone()];
        for k in 0..self.n {
            // column of the lower-triangular Toeplitz matrix for the leading
            // (k+1)x(k+1) block: 1, -a_kk, -R S, -R A S, ..., -R A^(k-1) S
            let mut col = Vec::with_capacity(k + 2);
            col.push(one.clone());
            col.push(self.get(k, k).neg_ref());
            let mut w: Vec<E> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for step in 0..k {
                let rs = (0..k).fold(zero.clone(), |acc, i| {
                    acc.add_ref(&self.get(k, i).mul_ref(&w[i]))
                });
                col.push(rs.neg_ref());
                if step + 1 < k {
                    w = (0..k)
                        .map(|i| {
                            (0..k).fold(zero.clone(), |acc, j| {
                                acc.add_ref(&self.get(i, j).mul_ref(&w[j]))
                            })
                        })
                        .collect();
                }
            }
            let next: Vec<E> = (0..=k + 1)
                .map(|i| {
                    (0..=k.min(i)).fold(zero.clone(), |acc, j| {
                        if i - j < col.len() && !v[j].is_zero_elem() {
                            acc.add_ref(&col[i - j].mul_ref(&v[j]))
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            v = next;
        }
        v
    }

    /// Determinant, division-free: `(-1)^n c_n`.
    pub fn determinant(&self, one: &E) -> E {
        let c = self.reversed_char_poly(one);
        let last = c.last().cloned().expect("nonempty");
        if self.n % 2 == 1 {
            last.neg_ref()
        } else {
            last
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, v: &[i128]) -> SquareMatrix<i128> {
        SquareMatrix::new(n, v.to_vec())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(m(1, &[7]).determinant(&1), 7);
        assert_eq!(m(2, &[1, 2, 3, 4]).determinant(&1), -2);
        assert_eq!(m(3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]).determinant(&1), 6);
        assert_eq!(SquareMatrix::<i128>::new(0, vec![]).determinant(&1), 1);
    }

    #[test]
    fn char_poly_of_diagonal() {
        // det(I - diag(2, 3) T) = 1 - 5T + 6T^2
        assert_eq!(m(2, &[2, 0, 0, 3]).reversed_char_poly(&1), vec![1, -5, 6]);
    }
}
