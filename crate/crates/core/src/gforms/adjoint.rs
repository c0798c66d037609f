use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{CMatrix, Matrix};
use crate::scalar::Scalar;

/// Exact matrices of Ad(g) and Ad(g⁻¹) for one group element g.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointPoint<S> {
    pub a: Matrix<S>,
    pub a_inv: Matrix<S>,
}

impl<S: Scalar> AdjointPoint<S> {
    pub fn identity(n: usize) -> Self {
        AdjointPoint { a: Matrix::identity(n), a_inv: Matrix::identity(n) }
    }

    fn from_matrix(a: Matrix<S>) -> Result<Self> {
        let a_inv = a.inverse().ok_or_else(|| Error::Shape("sampled adjoint matrix is singular".into()))?;
        Ok(AdjointPoint { a, a_inv })
    }
}

/// Rational point ((m²−n²)/(m²+n²), 2mn/(m²+n²)) on the unit circle.
pub fn pythagorean<S: Scalar>(m: i64, n: i64) -> (S, S) {
    let h = S::int(m * m + n * n);
    (S::int(m * m - n * n) / h.clone(), S::int(2 * m * n) / h)
}

/// Directions b with (ad ξ_b)³ = −κ² ad ξ_b for the adjoint fallback.
fn adjoint_rotations<S: Scalar>(algebra: &LieAlgebra<S>) -> Vec<(Matrix<S>, S)> {
    let mut out = Vec::new();
    for b in 0..algebra.dim() {
        let x = algebra.ad_matrix(b);
        if x.is_zero() {
            continue;
        }
        let cube = &(&x * &x) * &x;
        let num = crate::matrix::dot(x.components(), cube.components());
        let den = crate::matrix::dot(x.components(), x.components());
        let lambda = num / den;
        if lambda.is_negative() && cube == x.scale(&lambda) {
            if let Some(kappa) = (-lambda).exact_sqrt() {
                out.push((x, kappa));
            }
        }
    }
    out
}

fn rodrigues<S: Scalar>(y: &Matrix<S>, cos: &S, sin: &S) -> Matrix<S> {
    let y2 = y * y;
    &(&Matrix::identity(y.rows) + &y.scale(sin)) + &y2.scale(&(S::one() - cos.clone()))
}

/// One elementary rotation: Ad(exp(φ ξ_b/κ)) for the `rotation`-th admissible
/// direction, with (cos φ, sin φ) given.
pub fn elementary_adjoint<S: Scalar>(algebra: &LieAlgebra<S>, rotation: usize, cos: &S, sin: &S) -> Result<AdjointPoint<S>> {
    let n = algebra.dim();
    if algebra.is_abelian() {
        return Ok(AdjointPoint::identity(n));
    }
    if let Some(r) = algebra.realization() {
        if rotation >= r.rotations().len() {
            return Err(Error::IndexOutOfRange { index: rotation, dim: r.rotations().len() });
        }
        let g = r.elementary(rotation, cos, sin);
        return AdjointPoint::from_matrix(r.adjoint_matrix(&g)?);
    }
    let rots = adjoint_rotations(algebra);
    let (x, kappa) = rots.get(rotation).ok_or(Error::IndexOutOfRange { index: rotation, dim: rots.len() })?;
    AdjointPoint::from_matrix(rodrigues(&x.scale(&(S::one() / kappa.clone())), cos, sin))
}

/// Samples Ad(g) for a random product of elementary rotations with
/// Pythagorean angles. Deterministic in the RNG state.
pub fn sample_adjoint_with<S: Scalar>(algebra: &LieAlgebra<S>, rng: &mut impl Rng) -> Result<AdjointPoint<S>> {
    let n = algebra.dim();
    if algebra.is_abelian() {
        return Ok(AdjointPoint::identity(n));
    }
    let factors = rng.gen_range(2..=4);
    let angle = |rng: &mut dyn rand::RngCore| -> (S, S) {
        let m = rng.gen_range(1..=5i64);
        let k = rng.gen_range(1..=5i64);
        let (m, k) = if m == k { (m + 1, k) } else { (m, k) };
        let (c, s) = pythagorean::<S>(m, k);
        if rng.gen_bool(0.5) {
            (c, -s)
        } else {
            (c, s)
        }
    };
    if let Some(r) = algebra.realization() {
        if r.rotations().is_empty() {
            return Err(Error::UnsupportedAlgebra(algebra.name().to_string()));
        }
        let mut g = CMatrix::identity(r.basis()[0].size());
        for _ in 0..factors {
            let b = rng.gen_range(0..r.rotations().len());
            let (c, s) = angle(rng);
            g = &g * &r.elementary(b, &c, &s);
        }
        return AdjointPoint::from_matrix(r.adjoint_matrix(&g)?);
    }
    let rots = adjoint_rotations(algebra);
    if rots.is_empty() {
        return Err(Error::UnsupportedAlgebra(algebra.name().to_string()));
    }
    let mut a = Matrix::identity(n);
    for _ in 0..factors {
        let (x, kappa) = &rots[rng.gen_range(0..rots.len())];
        let (c, s) = angle(rng);
        a = &a * &rodrigues(&x.scale(&(S::one() / kappa.clone())), &c, &s);
    }
    AdjointPoint::from_matrix(a)
}

/// [`sample_adjoint_with`] from a fresh seeded generator.
pub fn sample_adjoint_point<S: Scalar>(algebra: &LieAlgebra<S>, seed: u64) -> Result<AdjointPoint<S>> {
    sample_adjoint_with(algebra, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Checks c^i_{jk} A^j_l A^k_m = A^i_p c^p_{lm} exactly.
pub fn is_automorphism<S: Scalar>(algebra: &LieAlgebra<S>, a: &Matrix<S>) -> bool {
    let n = algebra.dim();
    for l in 0..n {
        for m in 0..n {
            let x: Vec<S> = (0..n).map(|j| a[(j, l)].clone()).collect();
            let y: Vec<S> = (0..n).map(|k| a[(k, m)].clone()).collect();
            let lhs = algebra.bracket(&x, &y);
            for (i, v) in lhs.iter().enumerate() {
                let rhs = (0..n).fold(S::zero(), |acc, p| acc + a[(i, p)].clone() * algebra.c(p, l, m).clone());
                if *v != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks Aᵀ G A = G for the algebra's metric G.
pub fn preserves_metric<S: Scalar>(algebra: &LieAlgebra<S>, a: &Matrix<S>) -> bool {
    let g = algebra.metric();
    &(&a.transpose() * g) * a == *g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{abelian, su2, su3};
    use crate::scalar::{q, Q};

    #[test]
    fn su2_single_rotation() {
        let a = su2::<Q>().unwrap();
        let p = elementary_adjoint(&a, 2, &q(3, 5), &q(4, 5)).unwrap();
        let expect =
            Matrix::from_rows(vec![vec![q(3, 5), q(-4, 5), q(0, 1)], vec![q(4, 5), q(3, 5), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]]);
        assert_eq!(p.a, expect);
        assert_eq!(p.a_inv, expect.transpose());
        assert!(is_automorphism(&a, &p.a));
    }

    #[test]
    fn abelian_identity() {
        let a = abelian::<Q>(3).unwrap();
        for seed in 0..4 {
            let p = sample_adjoint_point(&a, seed).unwrap();
            assert!(p.a.is_identity() && p.a_inv.is_identity());
        }
    }

    #[test]
    fn sampled_points_are_exact_automorphisms() {
        for a in [su2::<Q>().unwrap(), su3::<Q>().unwrap()] {
            for seed in 0..6 {
                let p = sample_adjoint_point(&a, seed).unwrap();
                assert!((&p.a * &p.a_inv).is_identity());
                assert!(preserves_metric(&a, &p.a));
                assert!(is_automorphism(&a, &p.a));
                assert!(!p.a.is_identity());
            }
        }
    }

    #[test]
    fn adjoint_fallback_without_realization() {
        let s = su2::<Q>().unwrap();
        let bare: LieAlgebra<Q> = LieAlgebra::from_json(&s.to_json()).unwrap();
        assert!(bare.realization().is_none());
        let p = sample_adjoint_point(&bare, 5).unwrap();
        assert!(is_automorphism(&bare, &p.a));
        assert!((&p.a * &p.a_inv).is_identity());
    }
}
