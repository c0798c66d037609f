//! The Weil algebra W(𝔤) = ∧𝔤* ⊗ S𝔤* with generators θ^i (degree 1) and
//! μ^i (degree 2).

use crate::engine::{Derivation, Gen, GenKind, GradedElement};
use crate::error::{Error, Result};
use crate::lie::{valued, LieAlgebra, SymmetricTensor};
use crate::scalar::Scalar;

type E<S> = GradedElement<S>;

/// Generators other than θ and μ on which every Weil operator vanishes.
pub(crate) fn weil_constants() -> [Gen; 1] {
    [Gen::pi_inv()]
}

/// dθ^i = μ^i − ½ c^i_{jk} θ^j θ^k,  dμ^i = c^i_{jk} μ^j θ^k.
pub fn weil_differential<S: Scalar>(algebra: &LieAlgebra<S>) -> Derivation<S> {
    let n = algebra.dim();
    let theta = valued::generator_vector::<S>(GenKind::WeilTheta, n);
    let mu = valued::generator_vector::<S>(GenKind::Mu, n);
    let tt = valued::bracket(algebra, &theta, &theta);
    let mt = valued::bracket(algebra, &mu, &theta);
    let half = S::ratio(1, 2);
    let mut d = Derivation::new("d_W", true).vanishing_on(weil_constants());
    for i in 0..n {
        let mut img = mu[i].clone();
        img.add_scaled(&tt[i], &-half.clone());
        d.set(Gen::conn(i), img);
        d.set(Gen::curv(i), mt[i].clone());
    }
    d
}

/// ι_i θ^j = δ^j_i, ι_i μ^j = 0.
pub fn weil_contraction<S: Scalar>(algebra: &LieAlgebra<S>, i: usize) -> Result<Derivation<S>> {
    let n = algebra.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, dim: n });
    }
    let mut d = Derivation::new(format!("iota^W_{}", i + 1), true).vanishing_on(weil_constants());
    for j in 0..n {
        d.set(Gen::conn(j), if i == j { E::one() } else { E::zero() });
        d.set(Gen::curv(j), E::zero());
    }
    Ok(d)
}

/// The Weil complex with its contractions and Lie derivatives L_i = [d, ι_i].
#[derive(Clone, Debug)]
pub struct WeilComplex<S: Scalar> {
    algebra: LieAlgebra<S>,
    d: Derivation<S>,
    iota: Vec<Derivation<S>>,
    lie: Vec<Derivation<S>>,
}

impl<S: Scalar> WeilComplex<S> {
    pub fn new(algebra: &LieAlgebra<S>) -> Result<Self> {
        let d = weil_differential(algebra);
        let iota = (0..algebra.dim()).map(|i| weil_contraction(algebra, i)).collect::<Result<Vec<_>>>()?;
        let lie =
            iota.iter().enumerate().map(|(i, io)| Derivation::commutator(format!("L^W_{}", i + 1), &d, io)).collect::<Result<Vec<_>>>()?;
        Ok(WeilComplex { algebra: algebra.clone(), d, iota, lie })
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

    pub fn lie(&self, i: usize) -> &Derivation<S> {
        &self.lie[i]
    }

    pub fn generators(&self) -> Vec<Gen> {
        let n = self.algebra.dim();
        (0..n).flat_map(|i| [Gen::conn(i), Gen::curv(i)]).chain(weil_constants()).collect()
    }

    fn check_domain(&self, x: &E<S>) -> Result<()> {
        match x.generators().into_iter().find(|g| !matches!(g.kind(), GenKind::WeilTheta | GenKind::Mu | GenKind::PiInv)) {
            Some(g) => Err(Error::ForeignGenerator(g.name())),
            None => Ok(()),
        }
    }

    pub fn is_horizontal(&self, x: &E<S>) -> Result<bool> {
        self.check_domain(x)?;
        for io in &self.iota {
            if !io.apply(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_basic(&self, x: &E<S>) -> Result<bool> {
        if !self.is_horizontal(x)? {
            return Ok(false);
        }
        for l in &self.lie {
            if !l.apply(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// p_{i1..ik} μ^{i1}⋯μ^{ik}, including the tensor's scale.
    pub fn chern_weil_element(&self, p: &SymmetricTensor<S>) -> Result<E<S>> {
        let n = self.algebra.dim();
        if p.dim() != n {
            return Err(Error::DimensionMismatch(format!("polynomial over dimension {} for algebra of dimension {n}", p.dim())));
        }
        let mu = valued::generator_vector::<S>(GenKind::Mu, n);
        let slots: Vec<&[E<S>]> = vec![&mu; p.degree()];
        p.contract(&slots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{abelian, metric_polynomial, su2, sym_power_polynomial, Scale};
    use crate::scalar::{q, Q};
    use rand::SeedableRng;

    fn g(x: Gen) -> E<Q> {
        E::gen(x)
    }

    #[test]
    fn abelian_differential() {
        let a = abelian::<Q>(1).unwrap();
        let d = weil_differential(&a);
        assert_eq!(d.image(Gen::conn(0)).unwrap(), &g(Gen::curv(0)));
        assert!(d.image(Gen::curv(0)).unwrap().is_zero());
    }

    #[test]
    fn su2_differential() {
        let a = su2::<Q>().unwrap();
        let d = weil_differential(&a);
        let expect = &g(Gen::curv(0)) - &(&g(Gen::conn(1)) * &g(Gen::conn(2)));
        assert_eq!(d.image(Gen::conn(0)).unwrap(), &expect);
        for i in 0..3 {
            assert!(d.apply(d.image(Gen::conn(i)).unwrap()).unwrap().is_zero());
            assert!(d.apply(d.image(Gen::curv(i)).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn contraction_examples() {
        let a = su2::<Q>().unwrap();
        let i1 = weil_contraction(&a, 0).unwrap();
        let i2 = weil_contraction(&a, 1).unwrap();
        assert_eq!(i1.apply(&(&g(Gen::conn(0)) * &g(Gen::conn(1)))).unwrap(), g(Gen::conn(1)));
        let x = &g(Gen::curv(0)) - &(&g(Gen::conn(1)) * &g(Gen::conn(2)));
        assert_eq!(i2.apply(&x).unwrap(), -&g(Gen::conn(2)));
        assert!(matches!(weil_contraction(&a, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn lie_derivative_on_generators() {
        let a = su2::<Q>().unwrap();
        let w = WeilComplex::new(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut expect = E::zero();
                for l in 0..3 {
                    expect.add_scaled(&g(Gen::conn(l)), &-a.c(j, i, l).clone());
                }
                assert_eq!(w.lie(i).image(Gen::conn(j)).unwrap(), &expect);
            }
        }
    }

    #[test]
    fn horizontal_and_basic() {
        let a = su2::<Q>().unwrap();
        let w = WeilComplex::new(&a).unwrap();
        let x = (&g(Gen::curv(0)) * &g(Gen::curv(1))).scale(&q(2, 1));
        assert!(w.is_horizontal(&x).unwrap());
        assert!(!w.is_basic(&x).unwrap());
        let p = metric_polynomial(&a, Scale::one()).unwrap();
        let cw = w.chern_weil_element(&p).unwrap();
        assert!(w.is_basic(&cw).unwrap());
        assert!(!w.is_horizontal(&g(Gen::conn(0))).unwrap());
        assert!(matches!(w.is_horizontal(&g(Gen::mc(0))), Err(Error::ForeignGenerator(_))));
    }

    #[test]
    fn chern_weil_examples() {
        let b = abelian::<Q>(2).unwrap();
        let w = WeilComplex::new(&b).unwrap();
        let p = metric_polynomial(&b, Scale::one()).unwrap();
        let expect = &(&g(Gen::curv(0)) * &g(Gen::curv(0))) + &(&g(Gen::curv(1)) * &g(Gen::curv(1)));
        assert_eq!(w.chern_weil_element(&p).unwrap(), expect);

        let a = su2::<Q>().unwrap();
        let w = WeilComplex::new(&a).unwrap();
        let p4 = sym_power_polynomial(&a, 4).unwrap();
        let x = w.chern_weil_element(&p4).unwrap();
        assert_eq!(x.homogeneous_degree(), Some(8));
        assert!(w.is_basic(&x).unwrap());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let bad = SymmetricTensor::<Q>::random(3, 2, &mut rng);
        assert!(!w.is_basic(&w.chern_weil_element(&bad).unwrap()).unwrap());
    }
}
