//! Faithful matrix realizations used to produce exact adjoint points.

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Matrix};
use crate::scalar::Scalar;

/// A basis ξ_1..ξ_n of anti-Hermitian matrices over `S[i]`.
#[derive(Clone, Debug)]
pub struct Realization<S> {
    basis: Vec<CMatrix<S>>,
    gram_inv: Matrix<S>,
    /// Basis directions b with ξ_b³ = −κ²ξ_b, κ ∈ S, κ > 0.
    rotations: Vec<(usize, S)>,
}

impl<S: Scalar> Realization<S> {
    pub fn new(basis: Vec<CMatrix<S>>) -> Result<Self> {
        let n = basis.len();
        let gram = Matrix::from_fn(n, n, |i, j| basis[i].frobenius(&basis[j]));
        let gram_inv = gram.inverse().ok_or_else(|| Error::Shape("realization basis is linearly dependent".into()))?;
        let mut rotations = Vec::new();
        for (b, x) in basis.iter().enumerate() {
            let cube = &(x * x) * x;
            let lambda = x.frobenius(&cube) / x.frobenius(x);
            if !lambda.is_negative() || cube != x.scale(&lambda) {
                continue;
            }
            if let Some(kappa) = (-lambda).exact_sqrt() {
                rotations.push((b, kappa));
            }
        }
        Ok(Realization { basis, gram_inv, rotations })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix<S>] {
        &self.basis
    }

    pub fn rotations(&self) -> &[(usize, S)] {
        &self.rotations
    }

    /// Coordinates of `z` in the basis, or `None` when `z` is outside the span.
    pub fn decompose(&self, z: &CMatrix<S>) -> Option<Vec<S>> {
        let n = self.dim();
        let rhs: Vec<S> = self.basis.iter().map(|b| b.frobenius(z)).collect();
        let x: Vec<S> = (0..n).map(|i| (0..n).fold(S::zero(), |acc, j| acc + self.gram_inv[(i, j)].clone() * rhs[j].clone())).collect();
        let mut back = CMatrix::zeros(z.size());
        for (xi, b) in x.iter().zip(&self.basis) {
            back = &back + &b.scale(xi);
        }
        (back == *z).then_some(x)
    }

    /// Structure constants `c^i_{jk}` read off from matrix commutators,
    /// flattened as `c[(i*n + j)*n + k]`.
    pub fn structure_constants(&self) -> Result<Vec<S>> {
        let n = self.dim();
        let mut c = vec![S::zero(); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let z = self.basis[j].commutator(&self.basis[k]);
                let x = self.decompose(&z).ok_or_else(|| Error::Shape("realization is not closed under brackets".into()))?;
                for (i, v) in x.into_iter().enumerate() {
                    c[(i * n + j) * n + k] = v;
                }
            }
        }
        Ok(c)
    }

    /// exp(φ ξ_b/κ) = I + sin φ·Y + (1 − cos φ)·Y² with Y = ξ_b/κ, Y³ = −Y.
    pub fn elementary(&self, rotation: usize, cos: &S, sin: &S) -> CMatrix<S> {
        let (b, kappa) = &self.rotations[rotation];
        let y = self.basis[*b].scale(&(S::one() / kappa.clone()));
        let y2 = &y * &y;
        let n = y.size();
        &(&CMatrix::identity(n) + &y.scale(sin)) + &y2.scale(&(S::one() - cos.clone()))
    }

    /// Matrix of Ad(g) in the basis: `Ad(g) ξ_j = Σ_i A^i_j ξ_i`, for unitary g.
    pub fn adjoint_matrix(&self, g: &CMatrix<S>) -> Result<Matrix<S>> {
        let n = self.dim();
        let ginv = g.adjoint();
        let mut a = Matrix::zeros(n, n);
        for j in 0..n {
            let z = &(g * &self.basis[j]) * &ginv;
            let col = self.decompose(&z).ok_or_else(|| Error::Shape("conjugate left the realization".into()))?;
            for (i, v) in col.into_iter().enumerate() {
                a[(i, j)] = v;
            }
        }
        Ok(a)
    }
}

/// so(3) realization of su(2): (L_k)_{ij} = −ε_{kij}.
pub fn su2_matrices<S: Scalar>() -> Vec<CMatrix<S>> {
    (0..3).map(|k| CMatrix::real(Matrix::from_fn(3, 3, |i, j| -S::int(levi_civita(k, i, j))))).collect()
}

pub(crate) fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Basis −(i/2)λ_a (a = 1..7) and −(i/2)diag(1, 1, −2) of su(3).
pub fn su3_matrices<S: Scalar>() -> Vec<CMatrix<S>> {
    // Gell-Mann matrices as (row, col, re, im) entries.
    let gell_mann: [&[(usize, usize, i64, i64)]; 8] = [
        &[(0, 1, 1, 0), (1, 0, 1, 0)],
        &[(0, 1, 0, -1), (1, 0, 0, 1)],
        &[(0, 0, 1, 0), (1, 1, -1, 0)],
        &[(0, 2, 1, 0), (2, 0, 1, 0)],
        &[(0, 2, 0, -1), (2, 0, 0, 1)],
        &[(1, 2, 1, 0), (2, 1, 1, 0)],
        &[(1, 2, 0, -1), (2, 1, 0, 1)],
        &[(0, 0, 1, 0), (1, 1, 1, 0), (2, 2, -2, 0)],
    ];
    let minus_half = S::ratio(-1, 2);
    gell_mann
        .iter()
        .map(|entries| {
            let mut m = CMatrix::zeros(3);
            for &(r, c, re, im) in entries.iter() {
                m.re[(r, c)] = S::int(re);
                m.im[(r, c)] = S::int(im);
            }
            m.times_i().scale(&minus_half)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn su3_directions() {
        let r: Realization<Q> = Realization::new(su3_matrices()).unwrap();
        let dirs: Vec<usize> = r.rotations().iter().map(|(b, _)| *b).collect();
        assert_eq!(dirs, vec![0, 1, 2, 3, 4, 5, 6]);
        assert!(r.rotations().iter().all(|(_, k)| *k == q(1, 2)));
    }

    #[test]
    fn su2_rotation_about_third_axis() {
        let r: Realization<Q> = Realization::new(su2_matrices()).unwrap();
        let g = r.elementary(2, &q(3, 5), &q(4, 5));
        let a = r.adjoint_matrix(&g).unwrap();
        let expect =
            Matrix::from_rows(vec![vec![q(3, 5), q(-4, 5), q(0, 1)], vec![q(4, 5), q(3, 5), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]]);
        assert_eq!(a, expect);
    }

    #[test]
    fn elementary_factor_is_unitary() {
        let r: Realization<Q> = Realization::new(su3_matrices()).unwrap();
        let g = r.elementary(4, &q(5, 13), &q(12, 13));
        assert_eq!(&g * &g.adjoint(), CMatrix::identity(3));
    }
}
