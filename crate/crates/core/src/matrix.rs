//! Small dense exact matrices, real and Gaussian (re + i·im).

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == if i == j { S::one() } else { S::zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = a[(col, j)].clone() * f.clone();
                    a[(r, j)] = a[(r, j)].clone() - t;
                    let t = inv[(col, j)].clone() * f.clone();
                    inv[(r, j)] = inv[(r, j)].clone() - t;
                }
            }
        }
        Some(inv)
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        let inv = self.inverse()?;
        Some((0..self.rows).map(|i| dot(inv.row(i), b)).collect())
    }

    /// Row-major entries.
    pub fn components(&self) -> &[S] {
        &self.data
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows);
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

/// Square matrix over the Gaussian extension `S[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    pub re: Matrix<S>,
    pub im: Matrix<S>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        CMatrix { re: Matrix::zeros(n, n), im: Matrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        CMatrix { re: Matrix::identity(n), im: Matrix::zeros(n, n) }
    }

    pub fn real(re: Matrix<S>) -> Self {
        let n = re.rows;
        CMatrix { re, im: Matrix::zeros(n, n) }
    }

    pub fn size(&self) -> usize {
        self.re.rows
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMatrix { re: self.re.transpose(), im: self.im.transpose().scale(&-S::one()) }
    }

    pub fn scale(&self, s: &S) -> Self {
        CMatrix { re: self.re.scale(s), im: self.im.scale(s) }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        CMatrix { re: self.im.scale(&-S::one()), im: self.re.clone() }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `(re, im)` parts of the trace.
    pub fn trace(&self) -> (S, S) {
        let n = self.size();
        let mut re = S::zero();
        let mut im = S::zero();
        for k in 0..n {
            re = re + self.re[(k, k)].clone();
            im = im + self.im[(k, k)].clone();
        }
        (re, im)
    }

    /// Real Frobenius pairing `Re tr(self^† other)`.
    pub fn frobenius(&self, other: &Self) -> S {
        let a = &self.re.data;
        let b = &self.im.data;
        dot(a, &other.re.data) + dot(b, &other.im.data)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<S: Scalar> Mul for &CMatrix<S> {
    type Output = CMatrix<S>;
    fn mul(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        CMatrix { re, im }
    }
}

impl<S: Scalar> Add for &CMatrix<S> {
    type Output = CMatrix<S>;
    fn add(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        CMatrix { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<S: Scalar> Sub for &CMatrix<S> {
    type Output = CMatrix<S>;
    fn sub(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        CMatrix { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<S: Scalar> Neg for &CMatrix<S> {
    type Output = CMatrix<S>;
    fn neg(self) -> CMatrix<S> {
        self.scale(&-S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn inverse_roundtrip() {
        let m: Matrix<Q> = Matrix::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let sing: Matrix<Q> = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn gaussian_product() {
        // (i·I)^2 = -I
        let i2: CMatrix<Q> = CMatrix::identity(2).times_i();
        let sq = &i2 * &i2;
        assert_eq!(sq, CMatrix::identity(2).scale(&q(-1, 1)));
        assert_eq!(i2.adjoint(), CMatrix::identity(2).times_i().scale(&q(-1, 1)));
    }
}
