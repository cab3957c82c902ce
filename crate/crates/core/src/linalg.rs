//! Dense complex matrices small enough for the correlation bundle (at most
//! 16x16), generic over the scalar precision.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::precision::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Complex::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }

    /// Largest entry modulus, as f64.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr().to_f64().sqrt())
            .fold(0.0, f64::max)
    }

    /// Largest `|a_ij - conj(a_ji)|`, zero for a Hermitian matrix.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)].clone() - self[(j, i)].conj();
                worst = worst.max(d.norm_sqr().to_f64().sqrt());
            }
        }
        worst
    }

    /// Largest `|a_ij - a_ji|`, zero for a symmetric matrix.
    pub fn symmetric_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)].clone() - self[(j, i)].clone();
                worst = worst.max(d.norm_sqr().to_f64().sqrt());
            }
        }
        worst
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<Lu<T>> {
        assert_eq!(self.rows, self.cols, "LU of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let mut pivot = k;
            let mut best = a[(k, k)].norm_sqr();
            for i in k + 1..n {
                let v = a[(i, k)].norm_sqr();
                if v > best {
                    best = v;
                    pivot = i;
                }
            }
            if best.is_zero() {
                return Err(Error::DegeneratePoints("singular covariance block".into()));
            }
            if pivot != k {
                for j in 0..n {
                    a.data.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
                odd = !odd;
            }
            let inv = Complex::<T>::one() / a[(k, k)].clone();
            for i in k + 1..n {
                let factor = a[(i, k)].clone() * inv.clone();
                for j in k + 1..n {
                    let t = factor.clone() * a[(k, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                }
                a[(i, k)] = factor;
            }
        }
        Ok(Lu { lu: a, perm, odd })
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
    odd: bool,
}

impl<T: Real> Lu<T> {
    pub fn det(&self) -> Complex<T> {
        let mut d = Complex::<T>::one();
        for i in 0..self.lu.rows {
            d = d * self.lu[(i, i)].clone();
        }
        if self.odd {
            -d
        } else {
            d
        }
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &CMatrix<T>) -> CMatrix<T> {
        let n = self.lu.rows;
        assert_eq!(b.rows, n);
        let mut x = CMatrix::from_fn(n, b.cols, |i, j| b[(self.perm[i], j)].clone());
        for c in 0..b.cols {
            for i in 0..n {
                let mut acc = x[(i, c)].clone();
                for k in 0..i {
                    acc = acc - self.lu[(i, k)].clone() * x[(k, c)].clone();
                }
                x[(i, c)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, c)].clone();
                for k in i + 1..n {
                    acc = acc - self.lu[(i, k)].clone() * x[(k, c)].clone();
                }
                x[(i, c)] = acc / self.lu[(i, i)].clone();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sample() -> CMatrix<f64> {
        let v = [[2.0, 1.0, 0.5], [0.3, -1.0, 4.0], [1.5, 0.7, -2.0]];
        CMatrix::from_fn(3, 3, |i, j| Complex64::new(v[i][j], 0.1 * (i as f64 - j as f64)))
    }

    #[test]
    fn solve_inverts() {
        let a = sample();
        let lu = a.lu().unwrap();
        let x = lu.solve(&CMatrix::identity(3));
        let prod = a.matmul(&x);
        assert!(prod.sub(&CMatrix::identity(3)).max_abs() < 1e-14);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = sample();
        let m = |i: usize, j: usize| a[(i, j)];
        let cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        assert!((a.lu().unwrap().det() - cof).norm() < 1e-13);
    }

    #[test]
    fn singular_is_an_error() {
        let a = CMatrix::<f64>::zeros(2, 2);
        assert!(a.lu().is_err());
    }
}
