//! The tensor complex W(𝔤) ⊗ Ω(G), the Mathai-Quillen automorphism
//! φ = exp(γ) with γ = θ^i ι_i, and the Cartan model it lands in.

use crate::engine::{Derivation, Gen, GenKind, GradedElement};
use crate::error::{Error, Result};
use crate::gforms::{gform_generators, EqualityOracle, GFormComplex, OracleVerdict};
use crate::lie::LieAlgebra;
use crate::scalar::Scalar;
use crate::weil::WeilComplex;

type E<S> = GradedElement<S>;

#[derive(Clone, Debug)]
pub struct TensorComplex<S: Scalar> {
    weil: WeilComplex<S>,
    gforms: GFormComplex<S>,
    total_d: Derivation<S>,
    gamma: Derivation<S>,
    iota: Vec<Derivation<S>>,
    lie: Vec<Derivation<S>>,
    cartan_d: Derivation<S>,
}

/// Which basicness condition failed, with the oracle evidence.
#[derive(Clone, Debug)]
pub struct BasicCheck<S: Scalar> {
    pub basic: bool,
    pub failure: Option<(String, OracleVerdict<S>)>,
}

impl<S: Scalar> TensorComplex<S> {
    pub fn new(algebra: &LieAlgebra<S>) -> Result<Self> {
        let n = algebra.dim();
        let weil = WeilComplex::new(algebra)?;
        let gforms = GFormComplex::new(algebra)?;
        let total_d = Derivation::tensor_sum("d_tot", weil.d(), gforms.d())?;

        let mut gamma = Derivation::new("gamma", false);
        let mut cartan_d = Derivation::new("d_Cartan", true);
        for g in gform_generators(n) {
            let mut gi = E::zero();
            let mut mi = E::zero();
            for i in 0..n {
                let c = gforms.iota(i).image(g)?;
                if c.is_zero() {
                    continue;
                }
                gi = &gi + &(&E::gen(Gen::conn(i)) * c);
                mi = &mi + &(&E::gen(Gen::curv(i)) * c);
            }
            gamma.set(g, gi);
            cartan_d.set(g, gforms.d().image(g)? - &mi);
        }
        for g in weil.generators() {
            gamma.set(g, E::zero());
        }
        for i in 0..n {
            cartan_d.set(Gen::curv(i), E::zero());
        }

        let mut iota = Vec::with_capacity(n);
        let mut lie = Vec::with_capacity(n);
        for i in 0..n {
            let io = Derivation::tensor_sum(format!("iota_tot_{}", i + 1), weil.iota(i), gforms.iota(i))?;
            lie.push(Derivation::commutator(format!("L_tot_{}", i + 1), &total_d, &io)?);
            iota.push(io);
        }
        Ok(TensorComplex { weil, gforms, total_d, gamma, iota, lie, cartan_d })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        self.weil.algebra()
    }

    pub fn weil(&self) -> &WeilComplex<S> {
        &self.weil
    }

    pub fn gforms(&self) -> &GFormComplex<S> {
        &self.gforms
    }

    pub fn total_d(&self) -> &Derivation<S> {
        &self.total_d
    }

    pub fn gamma(&self) -> &Derivation<S> {
        &self.gamma
    }

    pub fn iota(&self, i: usize) -> &Derivation<S> {
        &self.iota[i]
    }

    pub fn lie(&self, i: usize) -> &Derivation<S> {
        &self.lie[i]
    }

    /// 1⊗d − μ^i⊗ι_i on θ-free elements.
    pub fn cartan_differential(&self) -> &Derivation<S> {
        &self.cartan_d
    }

    /// φ(x) = Σ_m γ^m(x)/m!.
    pub fn mq_phi_series(&self, x: &E<S>) -> Result<E<S>> {
        self.exp_series(x, S::one())
    }

    /// φ⁻¹(x) = Σ_m (−γ)^m(x)/m!.
    pub fn mq_phi_inverse_series(&self, x: &E<S>) -> Result<E<S>> {
        self.exp_series(x, -S::one())
    }

    fn exp_series(&self, x: &E<S>, sign: S) -> Result<E<S>> {
        let mut out = x.clone();
        let mut term = x.clone();
        let mut m = 1i64;
        loop {
            term = self.gamma.apply(&term)?;
            if term.is_zero() {
                break;
            }
            term = term.scale(&(sign.clone() / S::int(m)));
            out = &out + &term;
            m += 1;
        }
        Ok(out)
    }

    /// φ as the algebra automorphism it is: φ(Θ) = Θ + θ − Āθ,
    /// φ(Θ̂) = Θ̂ + Aθ − θ, identity on the other generators.
    pub fn mq_phi(&self, x: &E<S>) -> Result<E<S>> {
        self.exp_substitution(x, S::one())
    }

    pub fn mq_phi_inverse(&self, x: &E<S>) -> Result<E<S>> {
        self.exp_substitution(x, -S::one())
    }

    fn exp_substitution(&self, x: &E<S>, sign: S) -> Result<E<S>> {
        // γ vanishes on γ(g) for every generator g, so exp(±γ)(g) = g ± γ(g).
        let gamma = &self.gamma;
        let images = |g: Gen| -> Option<E<S>> {
            let img = gamma.image(g).ok()?;
            if img.is_zero() {
                return None;
            }
            let mut out = E::gen(g);
            out.add_scaled(img, &sign);
            Some(out)
        };
        for g in x.generators() {
            gamma.image(g)?;
        }
        Ok(x.substitute(images))
    }

    /// φ ∘ d_tot ∘ φ⁻¹ as a derivation, from its values on generators.
    /// On a basic x, φ(d x) is this applied to φ(x).
    pub fn conjugated_differential(&self) -> Result<Derivation<S>> {
        let mut out = Derivation::new("phi d phi^-1", true);
        for g in self.total_d.domain().collect::<Vec<_>>() {
            let img = self.mq_phi(&self.total_d.apply(&self.mq_phi_inverse(&E::gen(g))?)?)?;
            out.set(g, img);
        }
        Ok(out)
    }

    /// Basicness in W⊗Ω(G): ι_tot and L_tot annihilate x. Exact zero is
    /// accepted directly, anything else goes to the oracle. L_i x is formed
    /// as d(ι_i x) + ι_i(dx) so that dx is computed once.
    pub fn is_basic_tensor(&self, x: &E<S>, oracle: &EqualityOracle<S>) -> Result<BasicCheck<S>> {
        let n = self.algebra().dim();
        let fail = |label: String, v: OracleVerdict<S>| Ok(BasicCheck { basic: false, failure: Some((label, v)) });
        let mut contracted = Vec::with_capacity(n);
        for i in 0..n {
            let y = self.iota[i].apply(x)?;
            if !y.is_zero() {
                let v = oracle.is_zero(&y);
                if !v.equal {
                    return fail(format!("iota_{}", i + 1), v);
                }
            }
            contracted.push(y);
        }
        let dx = self.total_d.apply(x)?;
        for (i, y) in contracted.iter().enumerate() {
            let mut l = self.iota[i].apply(&dx)?;
            if !y.is_zero() {
                l = &l + &self.total_d.apply(y)?;
            }
            if l.is_zero() {
                continue;
            }
            let v = oracle.is_zero(&l);
            if !v.equal {
                return fail(format!("lie_{}", i + 1), v);
            }
        }
        Ok(BasicCheck { basic: true, failure: None })
    }

    /// The component of a basic x without θ generators, with μ renamed to χ.
    pub fn mq_project(&self, x: &E<S>, oracle: &EqualityOracle<S>) -> Result<EquivariantForm<S>> {
        let check = self.is_basic_tensor(x, oracle)?;
        if let Some((op, v)) = check.failure {
            let detail = v.witness.map(|w| w.to_json().to_string()).unwrap_or_default();
            return Err(Error::NotBasic(format!("{op} does not vanish; witness {detail}")));
        }
        Ok(project_unchecked(x))
    }
}

/// The infinitesimal conjugation action written out on generators:
/// coadjoint on Θ, Θ̂, θ, μ, χ and L_i A = A·ad(ξ_i) − ad(ξ_i)·A on the
/// adjoint symbols. It is defined independently of d and ι, so comparing
/// it with [d, ι_i] tests the Cartan formula.
pub fn coadjoint_action<S: Scalar>(algebra: &LieAlgebra<S>, i: usize) -> Result<Derivation<S>> {
    let n = algebra.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, dim: n });
    }
    let mut l =
        Derivation::new(format!("coad_{}", i + 1), false).vanishing_on([Gen::pi_inv(), Gen::alpha(), Gen::t(), Gen::dt(), Gen::dtheta()]);
    for kind in [GenKind::Theta, GenKind::ThetaHat, GenKind::WeilTheta, GenKind::Mu, GenKind::Chi] {
        for j in 0..n {
            let mut img = E::zero();
            for k in 0..n {
                let c = algebra.c(j, i, k);
                if !c.is_zero() {
                    img.add_scaled(&E::gen(Gen::new(kind, k, 0)), &-c.clone());
                }
            }
            l.set(Gen::new(kind, j, 0), img);
        }
    }
    for kind in [GenKind::Ad, GenKind::AdInv] {
        for a in 0..n {
            for b in 0..n {
                let mut img = E::zero();
                for k in 0..n {
                    let right = algebra.c(k, i, b);
                    if !right.is_zero() {
                        img.add_scaled(&E::gen(Gen::new(kind, a, k)), right);
                    }
                    let left = algebra.c(a, i, k);
                    if !left.is_zero() {
                        img.add_scaled(&E::gen(Gen::new(kind, k, b)), &-left.clone());
                    }
                }
                l.set(Gen::new(kind, a, b), img);
            }
        }
    }
    Ok(l)
}

/// θ-free part with μ → χ, without the basicness precondition.
pub fn project_unchecked<S: Scalar>(x: &E<S>) -> EquivariantForm<S> {
    let part = x.without_kind(GenKind::WeilTheta);
    EquivariantForm { element: mu_to_chi(&part) }
}

pub fn mu_to_chi<S: Scalar>(x: &E<S>) -> E<S> {
    x.rename(|g| if g.kind() == GenKind::Mu { Gen::chi(g.i()) } else { g })
}

pub fn chi_to_mu<S: Scalar>(x: &E<S>) -> E<S> {
    x.rename(|g| if g.kind() == GenKind::Chi { Gen::curv(g.i()) } else { g })
}

/// An element of the Cartan model: no θ or μ generators.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantForm<S: Scalar> {
    element: E<S>,
}

impl<S: Scalar> EquivariantForm<S> {
    pub fn new(element: E<S>) -> Result<Self> {
        if let Some(g) = element.generators().into_iter().find(|g| matches!(g.kind(), GenKind::WeilTheta | GenKind::Mu)) {
            return Err(Error::ForeignGenerator(g.name()));
        }
        Ok(EquivariantForm { element })
    }

    pub fn element(&self) -> &E<S> {
        &self.element
    }

    pub fn into_element(self) -> E<S> {
        self.element
    }

    /// Total degree counting χ as 2, when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        self.element.homogeneous_degree()
    }

    pub fn d_g(&self, complex: &GFormComplex<S>) -> Result<E<S>> {
        complex.cartan_differential()?.apply(&self.element)
    }

    /// d_G ω = 0 at every oracle point.
    pub fn is_closed(&self, complex: &GFormComplex<S>, oracle: &EqualityOracle<S>) -> Result<OracleVerdict<S>> {
        Ok(oracle.is_zero(&self.d_g(complex)?))
    }

    /// First i with total_lie_i(ω) ≠ 0 at some oracle point, if any.
    pub fn invariance(&self, complex: &GFormComplex<S>, oracle: &EqualityOracle<S>) -> Result<Option<(usize, OracleVerdict<S>)>> {
        for i in 0..complex.algebra().dim() {
            let y = complex.total_lie(i)?.apply(&self.element)?;
            if y.is_zero() {
                continue;
            }
            let v = oracle.is_zero(&y);
            if !v.equal {
                return Ok(Some((i, v)));
            }
        }
        Ok(None)
    }
}
