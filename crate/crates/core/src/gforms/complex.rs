use crate::engine::{Derivation, Gen, GenKind, GradedElement};
use crate::error::{Error, Result};
use crate::lie::{valued, LieAlgebra};
use crate::scalar::Scalar;

type E<S> = GradedElement<S>;

/// Generators treated as constants by every operator on G-forms.
pub(crate) fn gform_constants() -> [Gen; 5] {
    [Gen::pi_inv(), Gen::alpha(), Gen::t(), Gen::dt(), Gen::dtheta()]
}

/// Every generator of the G-form model for dimension `n`.
pub fn gform_generators(n: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Gen::mc(i));
        out.push(Gen::mc_hat(i));
        out.push(Gen::chi(i));
        for j in 0..n {
            out.push(Gen::ad(i, j));
            out.push(Gen::ad_inv(i, j));
        }
    }
    out.extend(gform_constants());
    out
}

/// dΘ = −½[Θ,Θ], dΘ̂ = ½[Θ̂,Θ̂], dA = ad(Θ̂)A, dĀ = −ad(Θ)Ā, dχ = 0.
pub fn gform_differential<S: Scalar>(algebra: &LieAlgebra<S>) -> Derivation<S> {
    let n = algebra.dim();
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    let hat = valued::generator_vector::<S>(GenKind::ThetaHat, n);
    let tt = valued::bracket(algebra, &th, &th);
    let hh = valued::bracket(algebra, &hat, &hat);
    let half = S::ratio(1, 2);
    let mut d = Derivation::new("d", true).vanishing_on(gform_constants());
    for i in 0..n {
        d.set(Gen::mc(i), tt[i].scale(&-half.clone()));
        d.set(Gen::mc_hat(i), hh[i].scale(&half));
        d.set(Gen::chi(i), E::zero());
    }
    for j in 0..n {
        let col_a: Vec<E<S>> = (0..n).map(|k| E::gen(Gen::ad(k, j))).collect();
        let col_b: Vec<E<S>> = (0..n).map(|k| E::gen(Gen::ad_inv(k, j))).collect();
        let da = valued::bracket(algebra, &hat, &col_a);
        let db = valued::bracket(algebra, &th, &col_b);
        for i in 0..n {
            d.set(Gen::ad(i, j), da[i].clone());
            d.set(Gen::ad_inv(i, j), -&db[i]);
        }
    }
    d
}

/// Contraction with the fundamental vector field of ξ_i for the
/// conjugation action: ι_i Θ = ξ_i − Ad(g⁻¹)ξ_i, ι_i Θ̂ = Ad(g)ξ_i − ξ_i.
pub fn gform_contraction<S: Scalar>(algebra: &LieAlgebra<S>, i: usize) -> Result<Derivation<S>> {
    let n = algebra.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, dim: n });
    }
    let mut d = Derivation::new(format!("iota_{}", i + 1), true).vanishing_on(gform_constants());
    for j in 0..n {
        let delta = if i == j { E::one() } else { E::zero() };
        d.set(Gen::mc(j), &delta - &E::gen(Gen::ad_inv(j, i)));
        d.set(Gen::mc_hat(j), &E::gen(Gen::ad(j, i)) - &delta);
        d.set(Gen::chi(j), E::zero());
        for k in 0..n {
            d.set(Gen::ad(j, k), E::zero());
            d.set(Gen::ad_inv(j, k), E::zero());
        }
    }
    Ok(d)
}

/// ι_χ = χ^i ι_i: ι_χ Θ = χ − Āχ, ι_χ Θ̂ = Aχ − χ.
pub fn iota_chi<S: Scalar>(algebra: &LieAlgebra<S>) -> Derivation<S> {
    let n = algebra.dim();
    let chi = valued::generator_vector::<S>(GenKind::Chi, n);
    let a_chi = valued::matrix_apply(GenKind::Ad, &chi);
    let abar_chi = valued::matrix_apply(GenKind::AdInv, &chi);
    let mut d = Derivation::new("iota_chi", true).vanishing_on(gform_constants());
    for j in 0..n {
        d.set(Gen::mc(j), &chi[j] - &abar_chi[j]);
        d.set(Gen::mc_hat(j), &a_chi[j] - &chi[j]);
        d.set(Gen::chi(j), E::zero());
        for k in 0..n {
            d.set(Gen::ad(j, k), E::zero());
            d.set(Gen::ad_inv(j, k), E::zero());
        }
    }
    d
}

/// Θ̂^i = Σ_j A^i_j Θ^j.
pub fn hat_theta<S: Scalar>(algebra: &LieAlgebra<S>, i: usize) -> Result<E<S>> {
    let n = algebra.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, dim: n });
    }
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    Ok(valued::matrix_apply(GenKind::Ad, &th).swap_remove(i))
}

/// The G-form model with its differential, contractions and the total
/// infinitesimal action (on forms and on the χ variables).
#[derive(Clone, Debug)]
pub struct GFormComplex<S: Scalar> {
    algebra: LieAlgebra<S>,
    d: Derivation<S>,
    iota: Vec<Derivation<S>>,
    iota_chi: Derivation<S>,
    total_lie: Vec<Derivation<S>>,
}

impl<S: Scalar> GFormComplex<S> {
    pub fn new(algebra: &LieAlgebra<S>) -> Result<Self> {
        let n = algebra.dim();
        let d = gform_differential(algebra);
        let iota = (0..n).map(|i| gform_contraction(algebra, i)).collect::<Result<Vec<_>>>()?;
        let mut total_lie = Vec::with_capacity(n);
        for (i, io) in iota.iter().enumerate() {
            let mut l = Derivation::commutator(format!("L_{}", i + 1), &d, io)?;
            // (L_i χ)^j = −c^j_{ik} χ^k
            for j in 0..n {
                let mut img = E::zero();
                for k in 0..n {
                    let c = algebra.c(j, i, k);
                    if !c.is_zero() {
                        img.add_scaled(&E::gen(Gen::chi(k)), &-c.clone());
                    }
                }
                l.set(Gen::chi(j), img);
            }
            total_lie.push(l);
        }
        Ok(GFormComplex { algebra: algebra.clone(), d, iota, iota_chi: iota_chi(algebra), total_lie })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn d(&self) -> &Derivation<S> {
        &self.d
    }

    pub fn iota(&self, i: usize) -> &Derivation<S> {
        &self.iota[i]
    }

    pub fn iota_chi(&self) -> &Derivation<S> {
        &self.iota_chi
    }

    pub fn total_lie(&self, i: usize) -> Result<&Derivation<S>> {
        self.total_lie.get(i).ok_or(Error::IndexOutOfRange { index: i + 1, dim: self.algebra.dim() })
    }

    /// The equivariant differential d_G = d − ι_χ.
    pub fn cartan_differential(&self) -> Result<Derivation<S>> {
        Derivation::sum("d_G", &[(S::one(), &self.d), (-S::one(), &self.iota_chi)])
    }
}
