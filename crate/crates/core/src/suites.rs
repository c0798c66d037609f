//! Named verification suites run against one algebra.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::engine::random::random_element;
use crate::engine::{Derivation, Gen, GenKind, GradedElement};
use crate::error::{Error, Result};
use crate::gforms::{gform_generators, EqualityOracle, GFormComplex, OracleVerdict};
use crate::lie::valued::{self, LieValued};
use crate::lie::{metric_polynomial, trace_polynomial, InvariantPolynomial, LieAlgebra, Scale, SymmetricTensor};
use crate::mq::{coadjoint_action, TensorComplex};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::string::{
    based_string_class, caloron_expand_identity, slot_basicness, universal_string_class, variant_basicness, verify_string_transgression,
    verify_universal_consistency, Variant,
};
use crate::transgression::{
    equivariant_transgress_closed, equivariant_transgress_integral, transgress_closed, transgress_integral, transgression_coefficient,
};
use crate::weil::WeilComplex;

type E<S> = GradedElement<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Weil,
    Mq,
    Transgression,
    String,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "weil" => Suite::Weil,
            "mq" => Suite::Mq,
            "transgression" => Suite::Transgression,
            "string" => Suite::String,
            "all" => Suite::All,
            other => return Err(Error::Parse { what: "suite".into(), detail: other.into() }),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Weil => "weil",
            Suite::Mq => "mq",
            Suite::Transgression => "transgression",
            Suite::String => "string",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig<S: Scalar> {
    pub algebra: LieAlgebra<S>,
    /// Polynomial under test; suites fall back to the metric when absent.
    pub polynomial: Option<InvariantPolynomial<S>>,
    pub samples: usize,
    pub seed: u64,
    /// Number of random elements for the structural checks.
    pub elements: usize,
}

impl<S: Scalar> SuiteConfig<S> {
    pub fn new(algebra: LieAlgebra<S>, samples: usize, seed: u64) -> Self {
        SuiteConfig { algebra, polynomial: None, samples, seed, elements: 100 }
    }

    fn polynomial(&self) -> Result<InvariantPolynomial<S>> {
        match &self.polynomial {
            Some(p) => Ok(p.clone()),
            None => metric_polynomial(&self.algebra, Scale::one()),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn oracle(&self) -> Result<EqualityOracle<S>> {
        EqualityOracle::new(&self.algebra, self.samples, self.seed)
    }

    fn report(&self, claim: &str, polynomial: &str) -> Report {
        Report::new(claim, self.algebra.name(), polynomial)
    }
}

fn witness_of<S: Scalar>(v: &OracleVerdict<S>) -> Value {
    v.witness.as_ref().map(|w| w.to_json()).unwrap_or(Value::Null)
}

/// Runs a suite; reports come back sorted by claim name. Suites other than
/// `algebra` stop at the algebra checks when the algebra is invalid.
pub fn run_suite<S: Scalar>(suite: Suite, cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let mut out = algebra_suite(cfg)?;
    let valid = out.iter().all(|r| r.pass);
    if suite != Suite::Algebra {
        if !valid {
            out.retain(|r| !r.pass);
            return Ok(out);
        }
        if suite != Suite::All {
            out.clear();
        }
        if matches!(suite, Suite::Weil | Suite::All) {
            out.extend(weil_suite(cfg)?);
        }
        if matches!(suite, Suite::Mq | Suite::All) {
            out.extend(mq_suite(cfg)?);
        }
        if matches!(suite, Suite::Transgression | Suite::All) {
            out.extend(transgression_suite(cfg)?);
        }
        if matches!(suite, Suite::String | Suite::All) {
            out.extend(string_suite(cfg)?);
        }
    }
    out.sort_by(|a, b| a.claim.cmp(&b.claim).then_with(|| a.polynomial.cmp(&b.polynomial)));
    Ok(out)
}

pub fn algebra_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let alg = &cfg.algebra;
    let validation = alg.validate();
    let mut out: Vec<Report> = validation
        .checks
        .iter()
        .map(|c| {
            let r = cfg.report(&format!("algebra.{}", c.name), "-");
            r.verdict(c.pass, || json!({ "indices": c.witness }))
        })
        .collect();
    if validation.pass() && !alg.is_abelian() {
        out.push(Report::timed(|| {
            let r = cfg.report("algebra.noninvariant_tensor_rejected", "random degree-2 tensor");
            let mut rng = cfg.rng(1);
            // a random symmetric tensor is invariant only by accident; retry a few times
            for _ in 0..8 {
                let t = SymmetricTensor::<S>::random(alg.dim(), 2, &mut rng);
                match InvariantPolynomial::new(alg, t, "random") {
                    Err(Error::NotInvariant(w)) => return r.passed_with(json!({ "rejected": w })),
                    Err(e) => return r.failed(json!({ "error": e.to_string() })),
                    Ok(_) => continue,
                }
            }
            r.failed(json!("eight random tensors were all accepted"))
        }));
    }
    Ok(out)
}

impl Report {
    /// Passing report that still records what was observed.
    fn passed_with(mut self, detail: Value) -> Self {
        self.pass = true;
        self.witness = Some(detail);
        self
    }
}

fn weil_generators(n: usize) -> Vec<Gen> {
    (0..n).flat_map(|i| [Gen::conn(i), Gen::curv(i)]).collect()
}

fn tensor_generators(n: usize) -> Vec<Gen> {
    let mut g = weil_generators(n);
    g.extend(
        gform_generators(n).into_iter().filter(|g| matches!(g.kind(), GenKind::Theta | GenKind::ThetaHat | GenKind::Ad | GenKind::AdInv)),
    );
    g
}

/// Checks `pred` on `count` random elements and reports the first failure.
fn on_random<S: Scalar>(
    report: Report,
    count: usize,
    rng: &mut ChaCha8Rng,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> E<S>,
    mut pred: impl FnMut(&E<S>) -> Result<Option<Value>>,
) -> Result<Report> {
    for k in 0..count {
        let x = sample(rng);
        if let Some(w) = pred(&x)? {
            return Ok(report.failed(json!({ "element": k, "input": x.to_pretty(), "detail": w })));
        }
    }
    Ok(report.passed())
}

fn d_squared<S: Scalar>(d: &Derivation<S>, x: &E<S>) -> Result<Option<Value>> {
    let y = d.apply(&d.apply(x)?)?;
    Ok((!y.is_zero()).then(|| json!(y.to_pretty())))
}

pub fn weil_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let alg = &cfg.algebra;
    let n = alg.dim();
    let w = WeilComplex::new(alg)?;
    let gens = weil_generators(n);
    let coad: Vec<Derivation<S>> = (0..n).map(|i| coadjoint_action(alg, i)).collect::<Result<_>>()?;
    let p = cfg.polynomial()?;
    let mut out = Vec::new();

    out.push(Report::timed(|| {
        let mut rng = cfg.rng(10);
        let r = cfg.report("weil.d_squared_zero", "-");
        for g in w.generators() {
            match d_squared(w.d(), &E::gen(g)) {
                Ok(None) => {}
                Ok(Some(v)) => return r.failed(json!({ "generator": g.name(), "residual": v })),
                Err(e) => return r.failed(json!(e.to_string())),
            }
        }
        on_random(r.clone(), cfg.elements, &mut rng, |rng| random_element(&gens, 3, 4, rng), |x| d_squared(w.d(), x))
            .unwrap_or_else(|e| r.failed(json!(e.to_string())))
    }));

    out.push(Report::timed(|| {
        let mut rng = cfg.rng(11);
        let r = cfg.report("weil.cartan_formula", "-");
        on_random(
            r.clone(),
            cfg.elements,
            &mut rng,
            |rng| random_element(&gens, 3, 4, rng),
            |x| {
                for i in 0..n {
                    let lhs = &w.d().apply(&w.iota(i).apply(x)?)? + &w.iota(i).apply(&w.d().apply(x)?)?;
                    let rhs = coad[i].apply(x)?;
                    if lhs != rhs {
                        return Ok(Some(json!({ "i": i + 1, "residual": (&lhs - &rhs).to_pretty() })));
                    }
                }
                Ok(None)
            },
        )
        .unwrap_or_else(|e| r.failed(json!(e.to_string())))
    }));

    out.push(Report::timed(|| {
        let mut rng = cfg.rng(12);
        let r = cfg.report("weil.contractions_anticommute", "-");
        on_random(
            r.clone(),
            cfg.elements,
            &mut rng,
            |rng| random_element(&gens, 3, 4, rng),
            |x| {
                let i = 0;
                for j in 0..n {
                    let y = &w.iota(i).apply(&w.iota(j).apply(x)?)? + &w.iota(j).apply(&w.iota(i).apply(x)?)?;
                    if !y.is_zero() {
                        return Ok(Some(json!({ "i": i + 1, "j": j + 1, "residual": y.to_pretty() })));
                    }
                }
                Ok(None)
            },
        )
        .unwrap_or_else(|e| r.failed(json!(e.to_string())))
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("weil.chern_weil_basic_closed", p.label());
        let run = || -> Result<Report> {
            let cw = w.chern_weil_element(&p)?;
            let basic = w.is_basic(&cw)?;
            let closed = w.d().apply(&cw)?.is_zero();
            Ok(r.clone().verdict(basic && closed, || json!({ "basic": basic, "closed": closed })))
        };
        run().unwrap_or_else(|e| r.failed(json!(e.to_string())))
    }));
    Ok(out)
}

/// Covariant 𝔤-valued building blocks: each transforms in the adjoint
/// representation under the total action.
/// Adjoint-covariant θ-free blocks with their odd degrees.
fn covariant_blocks<S: Scalar>(alg: &LieAlgebra<S>) -> Vec<(LieValued<S>, usize)> {
    let n = alg.dim();
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    let hat = valued::generator_vector::<S>(GenKind::ThetaHat, n);
    let mu = valued::generator_vector::<S>(GenKind::Mu, n);
    vec![
        (valued::bracket(alg, &th, &th), 2),
        (valued::bracket(alg, &hat, &hat), 2),
        (valued::matrix_apply(GenKind::Ad, &mu), 0),
        (valued::matrix_apply(GenKind::AdInv, &mu), 0),
        (th, 1),
        (hat, 1),
        (mu, 0),
    ]
}

/// A random invariant θ-free element Σ r ⟨V, W⟩ of covariant blocks, of
/// odd degree at most 3.
fn random_invariant<S: Scalar>(alg: &LieAlgebra<S>, blocks: &[(LieValued<S>, usize)], rng: &mut ChaCha8Rng) -> E<S> {
    let mut y = E::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let (v, dv) = blocks.choose(rng).expect("nonempty");
        let (w, _) = blocks.iter().filter(|(_, dw)| dv + dw <= 3).collect::<Vec<_>>().choose(rng).copied().expect("nonempty");
        let r = S::int(rng.gen_range(1..=4)) * if rng.gen_bool(0.5) { S::one() } else { -S::one() };
        y.add_scaled(&valued::pairing(alg, v, w), &r);
    }
    y
}

/// Elements up to this size get the element-level basicness check on top
/// of the slot certificate.
const FULL_BASIC_TERMS: usize = 5_000;

fn omega_degree<S: Scalar>(x: &E<S>) -> usize {
    x.terms().map(|(m, _)| m.odd().iter().filter(|g| matches!(g.kind(), GenKind::Theta | GenKind::ThetaHat)).count()).max().unwrap_or(0)
}

pub fn mq_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let alg = &cfg.algebra;
    let n = alg.dim();
    let tc = TensorComplex::new(alg)?;
    let oracle = cfg.oracle()?;
    let gens = tensor_generators(n);
    let coad: Vec<Derivation<S>> = (0..n).map(|i| coadjoint_action(alg, i)).collect::<Result<_>>()?;
    let small = |rng: &mut ChaCha8Rng| random_element::<S>(&gens, 2, 3, rng);
    let mut out = Vec::new();
    let fail = |r: &Report, e: Error| r.clone().failed(json!(e.to_string()));

    out.push(Report::timed(|| {
        let r = cfg.report("mq.total_d_squared_zero", "-");
        on_random(r.clone(), cfg.elements, &mut cfg.rng(20), small, |x| d_squared(tc.total_d(), x)).unwrap_or_else(|e| fail(&r, e))
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("mq.cartan_formula", "-");
        on_random(r.clone(), cfg.elements, &mut cfg.rng(21), small, |x| {
            let i = (omega_degree(x) + x.len()) % n;
            let lhs = &tc.total_d().apply(&tc.iota(i).apply(x)?)? + &tc.iota(i).apply(&tc.total_d().apply(x)?)?;
            let v = oracle.equal(&lhs, &coad[i].apply(x)?);
            Ok((!v.equal).then(|| json!({ "i": i + 1, "oracle": witness_of(&v) })))
        })
        .unwrap_or_else(|e| fail(&r, e))
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("mq.phi_inverse_identity", "-");
        on_random(r.clone(), cfg.elements, &mut cfg.rng(22), small, |x| {
            let back = tc.mq_phi(&tc.mq_phi_inverse(x)?)?;
            if back != *x {
                return Ok(Some(json!({ "residual": (&back - x).to_pretty() })));
            }
            let series = tc.mq_phi_series(x)?;
            let subst = tc.mq_phi(x)?;
            Ok((series != subst).then(|| json!({ "series_vs_substitution": (&series - &subst).to_pretty() })))
        })
        .unwrap_or_else(|e| fail(&r, e))
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("mq.gamma_nilpotent", "-");
        on_random(r.clone(), cfg.elements, &mut cfg.rng(23), small, |x| {
            let bound = omega_degree(x).min(n);
            let y = tc.gamma().apply_n(x, bound + 1)?;
            Ok((!y.is_zero()).then(|| json!({ "bound": bound + 1, "residual": y.to_pretty() })))
        })
        .unwrap_or_else(|e| fail(&r, e))
    }));

    let blocks = covariant_blocks(alg);
    out.push(Report::timed(|| {
        let r = cfg.report("mq.phi_basic_theta_free", "metric pairings");
        let run = || -> Result<Report> {
            // φ⁻¹ is an algebra map, so φ⁻¹⟨V, W⟩ = ⟨φ⁻¹V, φ⁻¹W⟩; with the
            // metric invariant, horizontal covariant slots make every
            // sample basic.
            let metric = metric_polynomial(alg, Scale::one())?;
            let inv: Vec<LieValued<S>> =
                blocks.iter().map(|(v, _)| v.iter().map(|c| tc.mq_phi_inverse(c)).collect()).collect::<Result<_>>()?;
            let names: Vec<String> = (1..=inv.len()).map(|k| format!("block{k}")).collect();
            let slots: Vec<(&str, &[E<S>])> = names.iter().map(String::as_str).zip(inv.iter().map(Vec::as_slice)).collect();
            let cert = slot_basicness(&tc, metric.tensor(), &slots, &oracle)?;
            if let Some((op, v)) = cert.failure {
                return Ok(r.clone().failed(json!({ "slot_not_basic": op, "oracle": witness_of(&v) })));
            }
            let conj = tc.conjugated_differential()?;
            let mut rng = cfg.rng(24);
            on_random(
                r.clone(),
                cfg.elements,
                &mut rng,
                |rng| random_invariant(alg, &blocks, rng),
                |y| {
                    let x = tc.mq_phi_inverse(y)?;
                    if x.len() <= FULL_BASIC_TERMS {
                        let check = tc.is_basic_tensor(&x, &oracle)?;
                        if let Some((op, v)) = check.failure {
                            return Ok(Some(json!({ "not_basic": op, "oracle": witness_of(&v) })));
                        }
                    }
                    let image = tc.mq_phi(&x)?;
                    if image.contains_kind(GenKind::WeilTheta) || image != *y {
                        return Ok(Some(json!({ "phi_image": image.to_pretty() })));
                    }
                    // φ ∘ d = d_Cartan ∘ φ on basic elements
                    let lhs = conj.apply(y)?;
                    let rhs = tc.cartan_differential().apply(y)?;
                    let v = oracle.equal(&lhs, &rhs);
                    Ok((!v.equal).then(|| json!({ "intertwining": witness_of(&v) })))
                },
            )
        };
        run().unwrap_or_else(|e| fail(&r, e))
    }));
    Ok(out)
}

fn default_transgression_polys<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<InvariantPolynomial<S>>> {
    if let Some(p) = &cfg.polynomial {
        return Ok(vec![p.clone()]);
    }
    let mut polys = vec![metric_polynomial(&cfg.algebra, Scale::one())?];
    if cfg.algebra.realization().is_some() {
        let t3 = trace_polynomial(&cfg.algebra, 3)?;
        if !t3.is_zero() {
            polys.push(t3);
        }
    }
    Ok(polys)
}

pub fn transgression_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let alg = &cfg.algebra;
    let gf = GFormComplex::new(alg)?;
    let oracle = cfg.oracle()?;
    let mut out = Vec::new();

    out.push(Report::timed(|| {
        let r = cfg.report("transgression.coefficients", "-");
        let c2 = transgression_coefficient::<S>(2);
        let c3 = transgression_coefficient::<S>(3);
        let ok = c2 == S::ratio(-1, 6) && c3 == S::ratio(1, 40);
        r.verdict(ok, || json!({ "k2": c2.to_string(), "k3": c3.to_string() }))
    }));

    let mut ladder: Vec<InvariantPolynomial<S>> = Vec::new();
    if alg.realization().is_some() {
        for k in 1..=5 {
            ladder.push(trace_polynomial(alg, k)?);
        }
    } else {
        ladder.push(metric_polynomial(alg, Scale::one())?);
    }
    for p in &ladder {
        out.push(Report::timed(|| {
            let r = cfg.report("transgression.integral_equals_closed", p.label());
            let run = || -> Result<Report> {
                let i = transgress_integral(&gf, p)?;
                let c = transgress_closed(&gf, p)?;
                let diff = i.form.element() - c.form.element();
                Ok(r.clone().verdict(diff.is_zero(), || json!({ "residual": diff.to_pretty() })))
            };
            run().unwrap_or_else(|e| r.failed(json!(e.to_string())))
        }));
    }

    for p in default_transgression_polys(cfg)? {
        out.push(Report::timed(|| {
            let r = cfg.report("transgression.closed", p.label());
            let run = || -> Result<Report> {
                let t = transgress_closed(&gf, &p)?;
                let dt = gf.d().apply(t.form.element())?;
                Ok(r.clone().verdict(dt.is_zero(), || json!({ "residual": dt.to_pretty() })))
            };
            run().unwrap_or_else(|e| r.failed(json!(e.to_string())))
        }));
        let tau_g = equivariant_transgress_integral(&gf, &p)?;
        out.push(Report::timed(|| {
            let r = cfg.report("transgression.equivariant_routes_agree", p.label());
            let run = || -> Result<Report> {
                let c = equivariant_transgress_closed(&gf, &p)?;
                let diff = tau_g.form.element() - c.form.element();
                Ok(r.clone().verdict(diff.is_zero(), || json!({ "residual": diff.to_pretty() })))
            };
            run().unwrap_or_else(|e| r.failed(json!(e.to_string())))
        }));
        out.push(Report::timed(|| {
            let r = cfg.report("transgression.equivariant_closed", p.label());
            match tau_g.form.is_closed(&gf, &oracle) {
                Ok(v) => r.verdict(v.equal, || witness_of(&v)),
                Err(e) => r.failed(json!(e.to_string())),
            }
        }));
        out.push(Report::timed(|| {
            let r = cfg.report("transgression.equivariant_invariant", p.label());
            match tau_g.form.invariance(&gf, &oracle) {
                Ok(None) => r.passed(),
                Ok(Some((i, v))) => r.failed(json!({ "i": i + 1, "oracle": witness_of(&v) })),
                Err(e) => r.failed(json!(e.to_string())),
            }
        }));
    }
    Ok(out)
}

/// The expected universal class for p = −metric/(8π²):
/// (1/8π²)(⅙⟨[Θ̂,Θ̂],Θ̂⟩ − ⟨χ, Θ + Θ̂⟩).
pub fn expected_normalized_class<S: Scalar>(alg: &LieAlgebra<S>) -> E<S> {
    let n = alg.dim();
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    let hat = valued::generator_vector::<S>(GenKind::ThetaHat, n);
    let chi = valued::generator_vector::<S>(GenKind::Chi, n);
    let mut body = valued::pairing(alg, &valued::bracket(alg, &hat, &hat), &hat).scale(&S::ratio(1, 6));
    body = &body - &valued::pairing(alg, &chi, &valued::add(&th, &hat));
    &Scale::new(S::ratio(1, 8), 2).to_element() * &body
}

/// (1/48π²)⟨[Θ,Θ],Θ⟩.
pub fn expected_based_class<S: Scalar>(alg: &LieAlgebra<S>) -> E<S> {
    let n = alg.dim();
    let th = valued::generator_vector::<S>(GenKind::Theta, n);
    &Scale::new(S::ratio(1, 48), 2).to_element() * &valued::pairing(alg, &valued::bracket(alg, &th, &th), &th)
}

/// dθ-part of p((F + Ψdθ)^k) against k·p(Ψ, F^{k−1})dθ with F = μ and
/// Ψ = Θ as independent symbols.
pub fn caloron_check<S: Scalar>(p: &SymmetricTensor<S>) -> Result<Option<Value>> {
    let n = p.dim();
    let k = p.degree();
    let f = valued::generator_vector::<S>(GenKind::Mu, n);
    let psi = valued::generator_vector::<S>(GenKind::Theta, n);
    let (dpart, rest) = caloron_expand_identity(p, &f, &psi)?;
    let mut slots: Vec<&[E<S>]> = vec![&psi];
    slots.extend(std::iter::repeat_n(f.as_slice(), k - 1));
    let expect = &p.contract(&slots)?.scale(&S::int(k as i64)) * &E::gen(Gen::dtheta());
    let rest_expect = p.contract(&vec![f.as_slice(); k])?;
    if dpart != expect {
        return Ok(Some(json!({ "k": k, "residual": (&dpart - &expect).to_pretty() })));
    }
    Ok((rest != rest_expect).then(|| json!({ "k": k, "rest_residual": (&rest - &rest_expect).to_pretty() })))
}

pub fn string_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<Vec<Report>> {
    let alg = &cfg.algebra;
    let tc = TensorComplex::new(alg)?;
    let oracle = cfg.oracle()?;
    let p = cfg.polynomial()?;
    let normalized = metric_polynomial(alg, Scale::string_normalization())?.relabel("metric-normalized");
    let mut out = Vec::new();

    out.push(Report::timed(|| {
        let r = cfg.report("string.based_class", normalized.label());
        match based_string_class(alg, &normalized) {
            Ok(s) => {
                let diff = &s - &expected_based_class(alg);
                r.verdict(diff.is_zero(), || json!({ "residual": diff.to_pretty() }))
            }
            Err(e) => r.failed(json!(e.to_string())),
        }
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("string.normalized_class_form", normalized.label());
        match universal_string_class(&tc, &normalized, Variant::Rederived, &oracle) {
            Ok(cls) => {
                if cls.phi_agrees != Some(true) {
                    return r.failed(json!({ "phi_agrees": cls.phi_agrees }));
                }
                let v = oracle.equal(cls.form.element(), &expected_normalized_class(alg));
                r.verdict(v.equal, || witness_of(&v))
            }
            Err(e) => r.failed(json!(e.to_string())),
        }
    }));

    out.push(Report::timed(|| {
        let r = verify_string_transgression(&p, alg, Variant::Rederived, cfg.samples, cfg.seed)
            .unwrap_or_else(|e| cfg.report("", p.label()).failed(json!(e.to_string())));
        Report { claim: "string.equals_equivariant_transgression".into(), ..r }
    }));
    out.push(Report::timed(|| {
        let r = verify_universal_consistency(&p, alg, cfg.samples, cfg.seed)
            .unwrap_or_else(|e| cfg.report("", p.label()).failed(json!(e.to_string())));
        Report { claim: "string.universal_consistency".into(), ..r }
    }));

    out.push(Report::timed(|| {
        let r = cfg.report("string.caloron_k_factor", "random symmetric k = 1..4");
        let mut rng = cfg.rng(30);
        for k in 1..=4 {
            let t = SymmetricTensor::<S>::random(alg.dim(), k, &mut rng);
            match caloron_check(&t) {
                Ok(None) => {}
                Ok(Some(w)) => return r.failed(w),
                Err(e) => return r.failed(json!(e.to_string())),
            }
        }
        r.passed()
    }));

    if !alg.is_abelian() {
        out.push(Report::timed(|| {
            let r = cfg.report("string.paper_display_variant_rejected", p.label());
            match variant_basicness(&tc, &p, Variant::PaperDisplay, &oracle) {
                Ok(check) => match check.failure {
                    Some((op, v)) if v.witness.is_some() => r.passed_with(json!({ "fails": op, "oracle": witness_of(&v) })),
                    Some((op, _)) => r.failed(json!({ "fails": op, "witness": "missing" })),
                    None => r.failed(json!("the display variant passed the basicness check")),
                },
                Err(e) => r.failed(json!(e.to_string())),
            }
        }));
    }
    Ok(out)
}
