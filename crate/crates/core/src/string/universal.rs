//! Universal connection data on PG × EG in the Weil-tensor model and the
//! string form it produces.

use crate::engine::{Gen, GenKind, GradedElement};
use crate::error::{Error, Result};
use crate::gforms::EqualityOracle;
use crate::lie::valued::{self, LieValued};
use crate::lie::{LieAlgebra, SymmetricTensor};
use crate::mq::{mu_to_chi, BasicCheck, EquivariantForm, TensorComplex};
use crate::scalar::Scalar;

type E<S> = GradedElement<S>;

/// Reading of the endpoint adjoint in the `[Θ̂, ·θ]` cross term of the curvature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `−[Θ̂, Ad(g⁻¹)θ]`, as the curvature is usually displayed.
    PaperDisplay,
    /// `−[Θ̂, Ad(g)θ]`, which makes F = ½(α²−α)[B,B] + α(Aμ−μ) + μ with
    /// B = Θ̂ − Aθ + θ.
    Rederived,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::PaperDisplay => "paper_display",
            Variant::Rederived => "rederived",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "paper_display" | "paper-display" | "paper" => Ok(Variant::PaperDisplay),
            "rederived" => Ok(Variant::Rederived),
            other => Err(Error::Parse { what: "variant".into(), detail: other.into() }),
        }
    }
}

/// Curvature F and covariant derivative of the Higgs field ∇Φ, both 𝔤-valued.
/// ∇Φ carries the loop marker dθ on the right of every term; the ∂α factor
/// is implicit.
#[derive(Clone, Debug)]
pub struct UniversalData<S: Scalar> {
    pub curvature_f: LieValued<S>,
    pub higgs_cov: LieValued<S>,
    pub variant: Variant,
}

/// B = Θ̂ − Aθ + θ.
fn higgs_vector<S: Scalar>(n: usize) -> LieValued<S> {
    let hat = valued::generator_vector::<S>(GenKind::ThetaHat, n);
    let th = valued::generator_vector::<S>(GenKind::WeilTheta, n);
    let a_th = valued::matrix_apply(GenKind::Ad, &th);
    valued::add(&valued::sub(&hat, &a_th), &th)
}

pub fn build_universal_data<S: Scalar>(algebra: &LieAlgebra<S>, variant: Variant) -> UniversalData<S> {
    let n = algebra.dim();
    let hat = valued::generator_vector::<S>(GenKind::ThetaHat, n);
    let th = valued::generator_vector::<S>(GenKind::WeilTheta, n);
    let mu = valued::generator_vector::<S>(GenKind::Mu, n);
    let a_th = valued::matrix_apply(GenKind::Ad, &th);
    let cross = match variant {
        Variant::Rederived => a_th.clone(),
        Variant::PaperDisplay => valued::matrix_apply(GenKind::AdInv, &th),
    };
    let half = S::ratio(1, 2);
    let br = |x: &[E<S>], y: &[E<S>]| valued::bracket(algebra, x, y);

    // ½[Θ̂,Θ̂] − [Θ̂, ·θ] + [Θ̂,θ] + ½[Aθ,Aθ] − [Aθ,θ] + ½[θ,θ]
    // (½[Aθ,Aθ] = ½A[θ,θ] because A is an automorphism)
    let mut brace = valued::scale(&half, &br(&hat, &hat));
    brace = valued::sub(&brace, &br(&hat, &cross));
    brace = valued::add(&brace, &br(&hat, &th));
    brace = valued::add(&brace, &valued::scale(&half, &br(&a_th, &a_th)));
    brace = valued::sub(&brace, &br(&a_th, &th));
    brace = valued::add(&brace, &valued::scale(&half, &br(&th, &th)));

    let alpha = E::gen(Gen::alpha());
    let a2a = &(&alpha * &alpha) - &alpha;
    let a_mu = valued::matrix_apply(GenKind::Ad, &mu);
    let curvature_f: LieValued<S> = (0..n)
        .map(|i| {
            let mut f = &a2a * &brace[i];
            f = &f + &(&alpha * &(&a_mu[i] - &mu[i]));
            &f + &mu[i]
        })
        .collect();
    let higgs_cov = valued::right_mul(&higgs_vector(n), &E::gen(Gen::dtheta()));
    UniversalData { curvature_f, higgs_cov, variant }
}

impl<S: Scalar> UniversalData<S> {
    /// The path-fibration specialization: θ = μ = 0 and A = Ā = identity.
    pub fn based(&self) -> Self {
        let sub = |x: &E<S>| {
            x.substitute(|g| match g.kind() {
                GenKind::WeilTheta | GenKind::Mu => Some(E::zero()),
                GenKind::Ad | GenKind::AdInv => Some(if g.i() == g.j() { E::one() } else { E::zero() }),
                _ => None,
            })
        };
        UniversalData {
            curvature_f: self.curvature_f.iter().map(sub).collect(),
            higgs_cov: self.higgs_cov.iter().map(sub).collect(),
            variant: self.variant,
        }
    }
}

fn check_shape<S: Scalar>(p: &SymmetricTensor<S>, f: &[E<S>], higgs: &[E<S>]) -> Result<()> {
    if p.degree() == 0 {
        return Err(Error::BadDegree(0, "string form needs k ≥ 1".into()));
    }
    if f.len() != p.dim() || higgs.len() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial over dimension {} with data of lengths {} and {}",
            p.dim(),
            f.len(),
            higgs.len()
        )));
    }
    if f.iter().any(|x| x.contains_kind(GenKind::DThetaLoop)) {
        return Err(Error::Shape("curvature contains the loop marker".into()));
    }
    Ok(())
}

/// k·p(∇Φ, F, …, F) with the dθ marker stripped and α integrated over [0, 1].
pub fn string_form<S: Scalar>(p: &SymmetricTensor<S>, f: &[E<S>], higgs_cov: &[E<S>]) -> Result<E<S>> {
    check_shape(p, f, higgs_cov)?;
    let k = S::int(p.degree() as i64);
    let psi = strip_marker(higgs_cov)?;
    // p(Ψ·dθ, F, …) = Σ_a Ψ^a G_a · dθ, since F and G_a are even
    let g = p.polarized(f)?;
    let psi_has_alpha = psi.iter().any(|x| x.contains_kind(GenKind::Alpha));
    let mut acc = E::zero();
    for (x, ga) in psi.iter().zip(&g) {
        if x.is_zero() || ga.is_zero() {
            continue;
        }
        let ga = if psi_has_alpha { ga.clone() } else { ga.integrate_parameter(Gen::alpha(), &S::zero(), &S::one())? };
        acc.add_scaled(&(x * &ga), &k);
    }
    if psi_has_alpha {
        acc = acc.integrate_parameter(Gen::alpha(), &S::zero(), &S::one())?;
    }
    Ok(acc)
}

/// Expands p((F + Ψ·dθ)^k) and splits it into the part linear in dθ
/// (returned with dθ on the right) and the dθ-free rest.
pub fn caloron_expand_identity<S: Scalar>(p: &SymmetricTensor<S>, f: &[E<S>], psi: &[E<S>]) -> Result<(E<S>, E<S>)> {
    let dth = E::gen(Gen::dtheta());
    let tilde: LieValued<S> = f.iter().zip(psi).map(|(fi, pi)| fi + &(pi * &dth)).collect();
    let slots: Vec<&[E<S>]> = vec![&tilde; p.degree()];
    let full = p.contract(&slots)?;
    let (marked, rest) = full.split_right(Gen::dtheta());
    Ok((&marked * &dth, rest))
}

/// Output of the universal pipeline.
#[derive(Clone, Debug)]
pub struct UniversalClass<S: Scalar> {
    /// The string form in W ⊗ Ω(G), before Mathai-Quillen.
    pub tensor_form: E<S>,
    pub form: EquivariantForm<S>,
    pub basic: BasicCheck<S>,
    /// Whether the full element was also checked for basicness (and not
    /// only through its slots).
    pub full_basic_check: bool,
    /// Whether φ reproduces the projection term for term. `None` when the
    /// comparison was skipped (k > 3).
    pub phi_agrees: Option<bool>,
}

/// Elements up to this many terms get the element-level basicness check
/// and the element-level φ in addition to the slot-level ones.
pub const FULL_CHECK_TERMS: usize = 60_000;

/// Splits ∇Φ into its dθ-free prefactor Ψ.
fn strip_marker<S: Scalar>(higgs_cov: &[E<S>]) -> Result<LieValued<S>> {
    higgs_cov
        .iter()
        .map(|h| {
            let (marked, rest) = h.split_right(Gen::dtheta());
            if rest.is_zero() {
                Ok(marked)
            } else {
                Err(Error::Shape("∇Φ must carry the loop marker in every term".into()))
            }
        })
        .collect()
}

/// Basicness of p(V_1, …, V_k) certified slot by slot: every slot is
/// horizontal (ι_i V = 0) and transforms in the adjoint representation
/// (L_i V = −[ξ_i, V]); with p invariant the contraction is then basic.
pub fn slot_basicness<S: Scalar>(
    complex: &TensorComplex<S>,
    p: &SymmetricTensor<S>,
    slots: &[(&str, &[E<S>])],
    oracle: &EqualityOracle<S>,
) -> Result<BasicCheck<S>> {
    let algebra = complex.algebra();
    let n = algebra.dim();
    if let Some((_, idx)) = p.invariance_defect(algebra) {
        let w: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        return Err(Error::NotInvariant(format!("tensor entry ({}) breaks invariance", w.join(","))));
    }
    let fail = |label: String, v| Ok(BasicCheck { basic: false, failure: Some((label, v)) });
    for &(name, v) in slots {
        for i in 0..n {
            for (a, va) in v.iter().enumerate() {
                let y = complex.iota(i).apply(va)?;
                if !y.is_zero() {
                    let verdict = oracle.is_zero(&y);
                    if !verdict.equal {
                        return fail(format!("iota_{} on {name}^{}", i + 1, a + 1), verdict);
                    }
                }
            }
            for (a, va) in v.iter().enumerate() {
                // L_i V^a + c^a_{ib} V^b
                let mut y = complex.lie(i).apply(va)?;
                for (b, vb) in v.iter().enumerate() {
                    let c = algebra.c(a, i, b);
                    if !c.is_zero() {
                        y.add_scaled(vb, c);
                    }
                }
                if !y.is_zero() {
                    let verdict = oracle.is_zero(&y);
                    if !verdict.equal {
                        return fail(format!("lie_{} on {name}^{}", i + 1, a + 1), verdict);
                    }
                }
            }
        }
    }
    Ok(BasicCheck { basic: true, failure: None })
}

fn not_basic<S: Scalar>(variant: Variant, check: &BasicCheck<S>) -> Error {
    let (op, v) = check.failure.as_ref().expect("failed check carries its operator");
    let detail = v.witness.as_ref().map(|w| w.to_json().to_string()).unwrap_or_default();
    Error::NotBasic(format!("{op} does not vanish on the {} string form; witness {detail}", variant.name()))
}

/// string_form → basicness → Mathai-Quillen projection. Basicness failure
/// is an error carrying the witness.
pub fn universal_string_class<S: Scalar>(
    complex: &TensorComplex<S>,
    p: &SymmetricTensor<S>,
    variant: Variant,
    oracle: &EqualityOracle<S>,
) -> Result<UniversalClass<S>> {
    let data = build_universal_data(complex.algebra(), variant);
    let psi = strip_marker(&data.higgs_cov)?;
    let basic = slot_basicness(complex, p, &[("Psi", &psi), ("F", &data.curvature_f)], oracle)?;
    if !basic.basic {
        return Err(not_basic(variant, &basic));
    }
    let s = string_form(p, &data.curvature_f, &data.higgs_cov)?;
    let full = s.len() <= FULL_CHECK_TERMS;
    if full {
        let check = complex.is_basic_tensor(&s, oracle)?;
        if !check.basic {
            return Err(not_basic(variant, &check));
        }
    }
    let form = crate::mq::project_unchecked(&s);
    let phi_agrees = if p.degree() > 3 {
        None
    } else if full {
        Some(mu_to_chi(&complex.mq_phi(&s)?) == *form.element())
    } else {
        // φ is an algebra automorphism fixing α and dθ, so φ(s) is the
        // string form of the φ-images of the slots.
        let f: LieValued<S> = data.curvature_f.iter().map(|x| complex.mq_phi(x)).collect::<Result<_>>()?;
        let h: LieValued<S> = data.higgs_cov.iter().map(|x| complex.mq_phi(x)).collect::<Result<_>>()?;
        Some(mu_to_chi(&string_form(p, &f, &h)?) == *form.element())
    };
    Ok(UniversalClass { tensor_form: s, form, basic, full_basic_check: full, phi_agrees })
}

/// The string form of the based data, with Θ̂ rewritten as Θ (valid by
/// invariance, since only Θ̂ survives).
pub fn based_string_class<S: Scalar>(algebra: &LieAlgebra<S>, p: &SymmetricTensor<S>) -> Result<E<S>> {
    let data = build_universal_data(algebra, Variant::Rederived).based();
    let s = string_form(p, &data.curvature_f, &data.higgs_cov)?;
    Ok(s.rename(|g| if g.kind() == GenKind::ThetaHat { Gen::mc(g.i()) } else { g }))
}

/// Basicness verdict for a variant without aborting: slot-level first,
/// then on the full element when it is small enough.
pub fn variant_basicness<S: Scalar>(
    complex: &TensorComplex<S>,
    p: &SymmetricTensor<S>,
    variant: Variant,
    oracle: &EqualityOracle<S>,
) -> Result<BasicCheck<S>> {
    let data = build_universal_data(complex.algebra(), variant);
    let psi = strip_marker(&data.higgs_cov)?;
    let slots = slot_basicness(complex, p, &[("Psi", &psi), ("F", &data.curvature_f)], oracle)?;
    if !slots.basic {
        return Ok(slots);
    }
    let s = string_form(p, &data.curvature_f, &data.higgs_cov)?;
    if s.len() <= FULL_CHECK_TERMS {
        return complex.is_basic_tensor(&s, oracle);
    }
    Ok(slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{abelian, metric_polynomial, su2, valued::pairing, Scale};
    use crate::scalar::{q, Q};

    fn vec_of(kind: GenKind, n: usize) -> LieValued<Q> {
        valued::generator_vector(kind, n)
    }

    #[test]
    fn abelian_data() {
        let a = abelian::<Q>(2).unwrap();
        let d = build_universal_data(&a, Variant::Rederived);
        let o = EqualityOracle::new(&a, 4, 3).unwrap();
        let mu = vec_of(GenKind::Mu, 2);
        let th = vec_of(GenKind::Theta, 2);
        for i in 0..2 {
            assert!(o.equal(&d.curvature_f[i], &mu[i]).equal);
            assert!(o.equal(&d.higgs_cov[i], &(&th[i] * &E::gen(Gen::dtheta()))).equal);
        }
    }

    #[test]
    fn based_data_is_path_fibration() {
        let a = su2::<Q>().unwrap();
        let d = build_universal_data(&a, Variant::Rederived).based();
        let hat = vec_of(GenKind::ThetaHat, 3);
        let hh = valued::bracket(&a, &hat, &hat);
        let alpha = E::gen(Gen::alpha());
        let a2a = (&(&alpha * &alpha) - &alpha).scale(&q(1, 2));
        for i in 0..3 {
            assert_eq!(d.curvature_f[i], &a2a * &hh[i]);
            assert_eq!(d.higgs_cov[i], &hat[i] * &E::gen(Gen::dtheta()));
        }
    }

    #[test]
    fn based_class_is_generator_multiple() {
        let a = su2::<Q>().unwrap();
        let p = metric_polynomial(&a, Scale::string_normalization()).unwrap();
        let s = based_string_class(&a, &p).unwrap();
        let th = vec_of(GenKind::Theta, 3);
        let expect = &Scale::new(q(1, 48), 2).to_element() * &pairing(&a, &valued::bracket(&a, &th, &th), &th);
        assert_eq!(s, expect);
    }

    #[test]
    fn rederived_curvature_matches_display_form() {
        // ½[Aθ,Aθ] against the displayed ½A[θ,θ]
        let a = su2::<Q>().unwrap();
        let th = vec_of(GenKind::WeilTheta, 3);
        let a_th = valued::matrix_apply(GenKind::Ad, &th);
        let lhs = valued::bracket(&a, &a_th, &a_th);
        let rhs = valued::matrix_apply(GenKind::Ad, &valued::bracket(&a, &th, &th));
        let o = EqualityOracle::new(&a, 6, 9).unwrap();
        for i in 0..3 {
            assert!(o.equal(&lhs[i], &rhs[i]).equal);
            assert_ne!(lhs[i], rhs[i]);
        }
    }

    #[test]
    fn caloron_small_degrees() {
        let a = su2::<Q>().unwrap();
        let f = vec_of(GenKind::Mu, 3);
        let psi = vec_of(GenKind::Theta, 3);
        for k in 1..=3 {
            let t =
                SymmetricTensor::from_sorted_fn(3, k, |idx| Q::from_integer((idx.iter().sum::<usize>() as i64 + 1).into()), Scale::one());
            let (dpart, rest) = caloron_expand_identity(&t, &f, &psi).unwrap();
            let mut slots: Vec<&[E<Q>]> = vec![&psi];
            slots.extend(std::iter::repeat_n(f.as_slice(), k - 1));
            let expect = &t.contract(&slots).unwrap().scale(&q(k as i64, 1)) * &E::gen(Gen::dtheta());
            assert_eq!(dpart, expect);
            assert_eq!(rest, t.contract(&vec![f.as_slice(); k]).unwrap());
        }
        let _ = a;
    }

    #[test]
    fn closed_form_on_su2() {
        let a = su2::<Q>().unwrap();
        let c = TensorComplex::new(&a).unwrap();
        let o = EqualityOracle::new(&a, 8, 11).unwrap();
        let p = metric_polynomial(&a, Scale::string_normalization()).unwrap();
        let cls = universal_string_class(&c, &p, Variant::Rederived, &o).unwrap();
        assert_eq!(cls.phi_agrees, Some(true));
        let th = vec_of(GenKind::Theta, 3);
        let hat = vec_of(GenKind::ThetaHat, 3);
        let chi = vec_of(GenKind::Chi, 3);
        let mut expect = pairing(&a, &valued::bracket(&a, &hat, &hat), &hat).scale(&q(1, 6));
        expect = &expect - &pairing(&a, &chi, &valued::add(&th, &hat));
        let expect = &Scale::new(q(1, 8), 2).to_element() * &expect;
        assert!(o.equal(cls.form.element(), &expect).equal);
    }

    #[test]
    fn paper_display_variant_is_not_basic() {
        let a = su2::<Q>().unwrap();
        let c = TensorComplex::new(&a).unwrap();
        let o = EqualityOracle::new(&a, 8, 11).unwrap();
        let p = metric_polynomial(&a, Scale::one()).unwrap();
        let check = variant_basicness(&c, &p, Variant::PaperDisplay, &o).unwrap();
        assert!(!check.basic);
        assert!(check.failure.unwrap().1.witness.is_some());
        assert!(matches!(universal_string_class(&c, &p, Variant::PaperDisplay, &o), Err(Error::NotBasic(_))));
    }
}
