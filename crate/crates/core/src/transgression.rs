//! Ordinary and equivariant transgression of invariant polynomials.

use std::fmt;

use crate::engine::{Derivation, Gen, GenKind, GradedElement, Monomial};
use crate::error::{Error, Result};
use crate::gforms::{EqualityOracle, GFormComplex, OracleVerdict};
use crate::lie::{valued, LieAlgebra, SymmetricTensor};
use crate::mq::EquivariantForm;
use crate::scalar::Scalar;

type E<S> = GradedElement<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Integral,
    ClosedFormula,
}

/// Slot contents used in the structured (human-readable) form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    Theta,
    ThetaHat,
    Bracket,
    BracketHat,
    Chi,
    AdChi,
    AdInvChi,
}

impl Slot {
    fn text(self) -> &'static str {
        match self {
            Slot::Theta => "Θ",
            Slot::ThetaHat => "Θ̂",
            Slot::Bracket => "[Θ,Θ]",
            Slot::BracketHat => "[Θ̂,Θ̂]",
            Slot::Chi => "χ",
            Slot::AdChi => "Ad(g)χ",
            Slot::AdInvChi => "Ad(g⁻¹)χ",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            Slot::Theta => "\\Theta",
            Slot::ThetaHat => "\\hat\\Theta",
            Slot::Bracket => "[\\Theta,\\Theta]",
            Slot::BracketHat => "[\\hat\\Theta,\\hat\\Theta]",
            Slot::Chi => "\\chi",
            Slot::AdChi => "\\mathrm{Ad}(g)\\chi",
            Slot::AdInvChi => "\\mathrm{Ad}(g^{-1})\\chi",
        }
    }

    fn vector<S: Scalar>(self, algebra: &LieAlgebra<S>) -> Vec<E<S>> {
        let n = algebra.dim();
        let th = || valued::generator_vector::<S>(GenKind::Theta, n);
        let hat = || valued::generator_vector::<S>(GenKind::ThetaHat, n);
        let chi = || valued::generator_vector::<S>(GenKind::Chi, n);
        match self {
            Slot::Theta => th(),
            Slot::ThetaHat => hat(),
            Slot::Bracket => valued::bracket(algebra, &th(), &th()),
            Slot::BracketHat => valued::bracket(algebra, &hat(), &hat()),
            Slot::Chi => chi(),
            Slot::AdChi => valued::matrix_apply(GenKind::Ad, &chi()),
            Slot::AdInvChi => valued::matrix_apply(GenKind::AdInv, &chi()),
        }
    }
}

/// `coeff · π^{-pi_inv_power} · p(slots…)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredTerm<S> {
    pub coeff: S,
    pub pi_inv_power: u32,
    pub slots: Vec<Slot>,
}

impl<S: Scalar> StructuredTerm<S> {
    fn body(&self, latex: bool) -> String {
        let parts: Vec<&str> = self.slots.iter().map(|s| if latex { s.latex() } else { s.text() }).collect();
        match (parts.len(), latex) {
            (2, false) => format!("⟨{}⟩", parts.join(",")),
            (2, true) => format!("\\langle {}\\rangle", parts.join(",")),
            _ => format!("p({})", parts.join(",")),
        }
    }

    pub fn evaluate(&self, algebra: &LieAlgebra<S>, p: &SymmetricTensor<S>) -> Result<E<S>> {
        let vecs: Vec<Vec<E<S>>> = self.slots.iter().map(|s| s.vector(algebra)).collect();
        let refs: Vec<&[E<S>]> = vecs.iter().map(Vec::as_slice).collect();
        let bare = p.clone().with_scale(crate::lie::Scale::one());
        let scale = crate::lie::Scale::new(self.coeff.clone(), self.pi_inv_power).to_element();
        Ok(&scale * &bare.contract(&refs)?)
    }
}

/// A sum of structured terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Structured<S>(pub Vec<StructuredTerm<S>>);

impl<S: Scalar> Structured<S> {
    pub fn evaluate(&self, algebra: &LieAlgebra<S>, p: &SymmetricTensor<S>) -> Result<E<S>> {
        let mut out = E::zero();
        for t in &self.0 {
            out = &out + &t.evaluate(algebra, p)?;
        }
        Ok(out)
    }

    fn render(&self, latex: bool) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, t) in self.0.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = t.coeff.abs();
            let mut c = if latex { crate::engine::serialize::scalar_latex(&abs) } else { abs.to_string() };
            if t.pi_inv_power > 0 {
                c = if latex { format!("{c}\\,\\pi^{{-{}}}", t.pi_inv_power) } else { format!("{c}·π^-{}", t.pi_inv_power) };
            } else if abs.is_one() {
                c.clear();
            }
            if !c.is_empty() {
                out.push_str(&c);
                out.push(' ');
            }
            out.push_str(&t.body(latex));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl<S: Scalar> fmt::Display for Structured<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Clone, Debug)]
pub struct TransgressionResult<S: Scalar> {
    pub form: EquivariantForm<S>,
    pub degree: usize,
    pub polynomial: String,
    pub method: Method,
    pub equivariant: bool,
    /// Closed-form presentation as a combination of p(Θ, …) terms.
    pub structured: Structured<S>,
}

/// ∫_0^1 (t²−t)^a (1−t)^b t^c dt.
fn beta_like<S: Scalar>(a: usize, b: usize, c: usize) -> S {
    let t = E::<S>::gen(Gen::t());
    let one = E::<S>::one();
    let mut poly = one.clone();
    let t2t = &(&t * &t) - &t;
    let omt = &one - &t;
    for _ in 0..a {
        poly = &poly * &t2t;
    }
    for _ in 0..b {
        poly = &poly * &omt;
    }
    for _ in 0..c {
        poly = &poly * &t;
    }
    let v = poly.integrate_parameter(Gen::t(), &S::zero(), &S::one()).expect("t is a parameter");
    v.coefficient(&Monomial::one())
}

fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * S::int(i as i64))
}

/// (−½)^{k−1} k!(k−1)!/(2k−1)!.
pub fn transgression_coefficient<S: Scalar>(k: usize) -> S {
    assert!(k >= 1);
    let mut c = S::one();
    for _ in 1..k {
        c = c * S::ratio(-1, 2);
    }
    c * factorial::<S>(k) * factorial::<S>(k - 1) / factorial::<S>(2 * k - 1)
}

/// Structured closed formula for τ (χ-free) or τ_G, in the left presentation.
fn structured_closed<S: Scalar>(p: &SymmetricTensor<S>, equivariant: bool) -> Structured<S> {
    let k = p.degree();
    let m = k - 1;
    let half = S::ratio(1, 2);
    let mut terms = Vec::new();
    for a in (0..=m).rev() {
        for b in (0..=m - a).rev() {
            let c = m - a - b;
            if !equivariant && a != m {
                continue;
            }
            let mut coeff = S::int(k as i64) * factorial::<S>(m) / (factorial::<S>(a) * factorial::<S>(b) * factorial::<S>(c));
            for _ in 0..a {
                coeff = coeff * half.clone();
            }
            coeff = coeff * beta_like::<S>(a, b, c) * p.scale().coeff.clone();
            if coeff.is_zero() {
                continue;
            }
            let mut slots = vec![Slot::Theta];
            slots.extend(std::iter::repeat_n(Slot::Bracket, a));
            slots.extend(std::iter::repeat_n(Slot::Chi, b));
            slots.extend(std::iter::repeat_n(Slot::AdInvChi, c));
            terms.push(StructuredTerm { coeff, pi_inv_power: p.scale().pi_inv_power, slots });
        }
    }
    Structured(terms)
}

/// Rewrites terms whose only χ slots are Ad(g⁻¹)χ by applying Ad(g) to
/// every slot (valid by invariance of p).
pub fn hat_presentation<S: Scalar>(s: &Structured<S>) -> Structured<S> {
    let terms =
        s.0.iter()
            .map(|t| {
                let has_inv = t.slots.contains(&Slot::AdInvChi);
                let has_chi = t.slots.contains(&Slot::Chi);
                if !has_inv || has_chi {
                    return t.clone();
                }
                let slots = t
                    .slots
                    .iter()
                    .map(|s| match s {
                        Slot::Theta => Slot::ThetaHat,
                        Slot::Bracket => Slot::BracketHat,
                        Slot::AdInvChi => Slot::Chi,
                        other => *other,
                    })
                    .collect();
                StructuredTerm { slots, ..t.clone() }
            })
            .collect();
    Structured(terms)
}

/// The differential on G × [0,1]: the G-form d extended by t ↦ dt.
fn extended_differential<S: Scalar>(complex: &GFormComplex<S>) -> Derivation<S> {
    complex.d().clone().with(Gen::t(), E::gen(Gen::dt())).named("D")
}

/// −∫_0^1 p(F^k) for a curvature F linear in dt: the dt factor is moved
/// to the right and the t-integral taken.
fn minus_integral<S: Scalar>(p: &SymmetricTensor<S>, f: &[E<S>]) -> Result<E<S>> {
    let slots: Vec<&[E<S>]> = vec![f; p.degree()];
    let full = p.contract(&slots)?;
    let (with_dt, _) = full.split_right(Gen::dt());
    Ok(-&with_dt.integrate_parameter(Gen::t(), &S::zero(), &S::one())?)
}

fn check_degree<S: Scalar>(algebra: &LieAlgebra<S>, p: &SymmetricTensor<S>) -> Result<()> {
    if p.dim() != algebra.dim() {
        return Err(Error::DimensionMismatch(format!("polynomial over dimension {} for algebra of dimension {}", p.dim(), algebra.dim())));
    }
    if p.degree() == 0 {
        return Err(Error::BadDegree(0, "transgression needs k ≥ 1".into()));
    }
    Ok(())
}

fn label<S: Scalar>(p: &SymmetricTensor<S>) -> String {
    format!("degree-{} tensor", p.degree())
}

/// τ(p) = −∫_0^1 p(F_t^k) with F_t = d(tΘ) + ½[tΘ, tΘ].
pub fn transgress_integral<S: Scalar>(complex: &GFormComplex<S>, p: &SymmetricTensor<S>) -> Result<TransgressionResult<S>> {
    let algebra = complex.algebra();
    check_degree(algebra, p)?;
    let n = algebra.dim();
    let d = extended_differential(complex);
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    let t_th = valued::left_mul(&E::gen(Gen::t()), &th);
    let sq = valued::bracket(algebra, &t_th, &t_th);
    let f: Vec<E<S>> = (0..n).map(|i| Ok(&d.apply(&t_th[i])? + &sq[i].scale(&S::ratio(1, 2)))).collect::<Result<_>>()?;
    let form = minus_integral(p, &f)?;
    Ok(TransgressionResult {
        form: EquivariantForm::new(form)?,
        degree: p.degree(),
        polynomial: label(p),
        method: Method::Integral,
        equivariant: false,
        structured: structured_closed(p, false),
    })
}

/// (−½)^{k−1} k!(k−1)!/(2k−1)! p(Θ, [Θ,Θ], …, [Θ,Θ]).
pub fn transgress_closed<S: Scalar>(complex: &GFormComplex<S>, p: &SymmetricTensor<S>) -> Result<TransgressionResult<S>> {
    let algebra = complex.algebra();
    check_degree(algebra, p)?;
    let k = p.degree();
    let coeff = transgression_coefficient::<S>(k) * p.scale().coeff.clone();
    let mut slots = vec![Slot::Theta];
    slots.extend(std::iter::repeat_n(Slot::Bracket, k - 1));
    let structured = Structured(vec![StructuredTerm { coeff, pi_inv_power: p.scale().pi_inv_power, slots }]);
    let form = structured.evaluate(algebra, p)?;
    Ok(TransgressionResult {
        form: EquivariantForm::new(form)?,
        degree: k,
        polynomial: label(p),
        method: Method::ClosedFormula,
        equivariant: false,
        structured,
    })
}

/// τ_G(p) = −∫_0^1 p((F_G(tΘ) + χ)^k) with
/// F_G(tΘ) = D(tΘ) − ι_χ(tΘ) + ½[tΘ, tΘ].
pub fn equivariant_transgress_integral<S: Scalar>(complex: &GFormComplex<S>, p: &SymmetricTensor<S>) -> Result<TransgressionResult<S>> {
    let algebra = complex.algebra();
    check_degree(algebra, p)?;
    let n = algebra.dim();
    let d = extended_differential(complex);
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    let chi = valued::generator_vector::<S>(GenKind::Chi, n);
    let t_th = valued::left_mul(&E::gen(Gen::t()), &th);
    let sq = valued::bracket(algebra, &t_th, &t_th);
    let mut f = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = d.apply(&t_th[i])?;
        v = &v - &complex.iota_chi().apply(&t_th[i])?;
        v.add_scaled(&sq[i], &S::ratio(1, 2));
        f.push(&v + &chi[i]);
    }
    let form = minus_integral(p, &f)?;
    Ok(TransgressionResult {
        form: EquivariantForm::new(form)?,
        degree: p.degree(),
        polynomial: label(p),
        method: Method::Integral,
        equivariant: true,
        structured: structured_closed(p, true),
    })
}

/// k∫_0^1 p(Θ, (½(t²−t)[Θ,Θ] + (1−t)χ + t·Ad(g⁻¹)χ)^{k−1}) dt, expanded
/// multinomially and integrated term by term.
pub fn equivariant_transgress_closed<S: Scalar>(complex: &GFormComplex<S>, p: &SymmetricTensor<S>) -> Result<TransgressionResult<S>> {
    let algebra = complex.algebra();
    check_degree(algebra, p)?;
    let structured = structured_closed(p, true);
    let form = structured.evaluate(algebra, p)?;
    Ok(TransgressionResult {
        form: EquivariantForm::new(form)?,
        degree: p.degree(),
        polynomial: label(p),
        method: Method::ClosedFormula,
        equivariant: true,
        structured,
    })
}

/// τ_G(p), computed by the parameter integral.
pub fn equivariant_transgress<S: Scalar>(complex: &GFormComplex<S>, p: &SymmetricTensor<S>) -> Result<TransgressionResult<S>> {
    equivariant_transgress_integral(complex, p)
}

/// d_G ω = 0 on the oracle.
pub fn check_equivariantly_closed<S: Scalar>(
    complex: &GFormComplex<S>,
    form: &EquivariantForm<S>,
    oracle: &EqualityOracle<S>,
) -> Result<OracleVerdict<S>> {
    form.is_closed(complex, oracle)
}
