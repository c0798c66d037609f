//! 𝔤-valued elements: component vectors `X = X^i ξ_i` with entries in a
//! graded algebra.

use super::algebra::LieAlgebra;
use crate::engine::{Accumulator, Gen, GenKind, GradedElement};
use crate::scalar::Scalar;

pub type LieValued<S> = Vec<GradedElement<S>>;

/// `Σ_i g^i ξ_i` for the generators of a kind, e.g. Θ = Θ^i ξ_i.
pub fn generator_vector<S: Scalar>(kind: GenKind, n: usize) -> LieValued<S> {
    (0..n).map(|i| GradedElement::gen(Gen::new(kind, i, 0))).collect()
}

pub fn zero<S: Scalar>(n: usize) -> LieValued<S> {
    vec![GradedElement::zero(); n]
}

pub fn add<S: Scalar>(x: &[GradedElement<S>], y: &[GradedElement<S>]) -> LieValued<S> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub<S: Scalar>(x: &[GradedElement<S>], y: &[GradedElement<S>]) -> LieValued<S> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale<S: Scalar>(c: &S, x: &[GradedElement<S>]) -> LieValued<S> {
    x.iter().map(|a| a.scale(c)).collect()
}

/// Left multiplication of every component by `e`.
pub fn left_mul<S: Scalar>(e: &GradedElement<S>, x: &[GradedElement<S>]) -> LieValued<S> {
    x.iter().map(|a| e * a).collect()
}

/// Right multiplication of every component by `e`.
pub fn right_mul<S: Scalar>(x: &[GradedElement<S>], e: &GradedElement<S>) -> LieValued<S> {
    x.iter().map(|a| a * e).collect()
}

/// `[X, Y]^i = c^i_{jk} X^j Y^k`.
pub fn bracket<S: Scalar>(algebra: &LieAlgebra<S>, x: &[GradedElement<S>], y: &[GradedElement<S>]) -> LieValued<S> {
    let n = algebra.dim();
    let mut acc: Vec<Accumulator<S>> = (0..n).map(|_| Accumulator::default()).collect();
    for j in 0..n {
        if x[j].is_zero() {
            continue;
        }
        for k in 0..n {
            if y[k].is_zero() {
                continue;
            }
            let mut prod = None;
            for (i, slot) in acc.iter_mut().enumerate() {
                let c = algebra.c(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let p = prod.get_or_insert_with(|| &x[j] * &y[k]);
                slot.add_element(p, c);
            }
        }
    }
    acc.into_iter().map(Accumulator::finish).collect()
}

/// `(M X)^i = Σ_j M^i_j X^j` with M the symbolic matrix of kind `Ad` or `AdInv`.
pub fn matrix_apply<S: Scalar>(kind: GenKind, x: &[GradedElement<S>]) -> LieValued<S> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut acc = Accumulator::default();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    acc.add_element(&(&GradedElement::gen(Gen::new(kind, i, j)) * xj), &S::one());
                }
            }
            acc.finish()
        })
        .collect()
}

/// `⟨X, Y⟩ = g_{ij} X^i Y^j`.
pub fn pairing<S: Scalar>(algebra: &LieAlgebra<S>, x: &[GradedElement<S>], y: &[GradedElement<S>]) -> GradedElement<S> {
    let n = algebra.dim();
    let mut acc = Accumulator::default();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let g = &algebra.metric()[(i, j)];
            if g.is_zero() || y[j].is_zero() {
                continue;
            }
            acc.add_element(&(&x[i] * &y[j]), g);
        }
    }
    acc.finish()
}

/// Applies a map to every component.
pub fn map<S: Scalar>(x: &[GradedElement<S>], f: impl Fn(&GradedElement<S>) -> GradedElement<S>) -> LieValued<S> {
    x.iter().map(f).collect()
}
