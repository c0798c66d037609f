//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::time::Instant;

use cartanweil::engine::GenKind;
use cartanweil::error::Error;
use cartanweil::gforms::{EqualityOracle, GFormComplex};
use cartanweil::lie::{metric_polynomial, su2, su3, trace_polynomial, valued, InvariantPolynomial, LieAlgebra, Scale, SymmetricTensor};
use cartanweil::mq::TensorComplex;
use cartanweil::scalar::q;
use cartanweil::string::{based_string_class, universal_string_class, verify_string_transgression, Variant};
use cartanweil::suites::{caloron_check, mq_suite, weil_suite, SuiteConfig};
use cartanweil::transgression::{equivariant_transgress, transgress_closed, transgress_integral, transgression_coefficient};
use cartanweil::{Algebra, Element, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const SAMPLES: usize = 8;
const SEED: u64 = 2024;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn algebras() -> Vec<Algebra> {
    vec![su2().unwrap(), su3().unwrap()]
}

fn err(e: Error) -> String {
    e.to_string()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn vector(kind: GenKind, n: usize) -> Vec<Element> {
    valued::generator_vector(kind, n)
}

/// ⟨[X,X],X⟩ for the generator vector of `kind`.
fn cubic(a: &LieAlgebra<Q>, kind: GenKind) -> Element {
    let x = vector(kind, a.dim());
    valued::pairing(a, &valued::bracket(a, &x, &x), &x)
}

fn normalized(a: &Algebra) -> InvariantPolynomial<Q> {
    metric_polynomial(a, Scale::string_normalization()).unwrap()
}

fn transgression_coefficients() -> Outcome {
    check(transgression_coefficient::<Q>(2) == q(-1, 6), || "k=2 coefficient".into())?;
    check(transgression_coefficient::<Q>(3) == q(1, 40), || "k=3 coefficient".into())?;
    for a in algebras() {
        let gf = GFormComplex::new(&a).map_err(err)?;
        for k in 1..=5 {
            let p = trace_polynomial(&a, k).map_err(err)?;
            let i = transgress_integral(&gf, &p).map_err(err)?;
            let c = transgress_closed(&gf, &p).map_err(err)?;
            check(i.form == c.form, || format!("{} trace:{k}: integral and closed forms differ", a.name()))?;
        }
    }
    Ok(())
}

fn based_class() -> Outcome {
    for a in algebras() {
        let got = based_string_class(&a, &normalized(&a)).map_err(err)?;
        let expect = &Scale::new(q(1, 48), 2).to_element() * &cubic(&a, GenKind::Theta);
        check(got == expect, || format!("{}: residual {}", a.name(), (&got - &expect).to_pretty()))?;
    }
    Ok(())
}

fn normalized_universal_class() -> Outcome {
    let a = su2::<Q>().unwrap();
    let tc = TensorComplex::new(&a).map_err(err)?;
    let oracle = EqualityOracle::new(&a, SAMPLES, SEED).map_err(err)?;
    let class = universal_string_class(&tc, &normalized(&a), Variant::Rederived, &oracle).map_err(err)?;
    check(class.full_basic_check, || "element-level basicness check skipped".into())?;
    check(class.phi_agrees == Some(true), || format!("mq_phi path disagrees: {:?}", class.phi_agrees))?;
    let n = a.dim();
    let th = vector(GenKind::Theta, n);
    let hat = vector(GenKind::ThetaHat, n);
    let chi = vector(GenKind::Chi, n);
    let body = &cubic(&a, GenKind::ThetaHat).scale(&q(1, 6)) - &valued::pairing(&a, &chi, &valued::add(&th, &hat));
    let expect = &Scale::new(q(1, 8), 2).to_element() * &body;
    let v = oracle.equal(class.form.element(), &expect);
    check(v.equal, || v.to_json().to_string())
}

fn string_equals_transgression() -> Outcome {
    let s2 = su2::<Q>().unwrap();
    let s3 = su3::<Q>().unwrap();
    let cases = [
        (s2.clone(), metric_polynomial(&s2, Scale::one()).map_err(err)?),
        (s3.clone(), metric_polynomial(&s3, Scale::one()).map_err(err)?),
        (s3.clone(), trace_polynomial(&s3, 3).map_err(err)?),
    ];
    for (a, p) in cases {
        let t = Instant::now();
        let r = verify_string_transgression(&p, &a, Variant::Rederived, SAMPLES, SEED).map_err(err)?;
        println!("    {} ({} ms)", r.line(), t.elapsed().as_millis());
        check(r.pass, || format!("{}: {}", r.line(), r.witness.map(|w| w.to_string()).unwrap_or_default()))?;
    }
    Ok(())
}

fn closedness() -> Outcome {
    for a in algebras() {
        let gf = GFormComplex::new(&a).map_err(err)?;
        let oracle = EqualityOracle::new(&a, SAMPLES, SEED).map_err(err)?;
        for k in 1..=5 {
            let p = trace_polynomial(&a, k).map_err(err)?;
            let t = transgress_closed(&gf, &p).map_err(err)?;
            let dt = gf.d().apply(t.form.element()).map_err(err)?;
            check(dt.is_zero(), || format!("{} trace:{k}: d τ ≠ 0", a.name()))?;
        }
        let mut equivariant = vec![metric_polynomial(&a, Scale::one()).map_err(err)?];
        let t3 = trace_polynomial(&a, 3).map_err(err)?;
        if !t3.is_zero() {
            equivariant.push(t3);
        }
        for p in equivariant {
            let tau = equivariant_transgress(&gf, &p).map_err(err)?;
            let v = tau.form.is_closed(&gf, &oracle).map_err(err)?;
            check(v.equal, || format!("{} {}: d_G τ_G ≠ 0", a.name(), p.label()))?;
            let inv = tau.form.invariance(&gf, &oracle).map_err(err)?;
            check(inv.is_none(), || format!("{} {}: τ_G not invariant", a.name(), p.label()))?;
        }
    }
    Ok(())
}

fn structural() -> Outcome {
    for a in algebras() {
        let cfg = SuiteConfig::new(a.clone(), SAMPLES, SEED);
        check(cfg.elements >= 100, || "fewer than 100 elements".into())?;
        let mut reports = weil_suite(&cfg).map_err(err)?;
        reports.extend(mq_suite(&cfg).map_err(err)?);
        for r in &reports {
            println!("    {}", r.line());
        }
        for r in reports {
            check(r.pass, || format!("{}: {}", r.line(), r.witness.map(|w| w.to_string()).unwrap_or_default()))?;
        }
    }
    Ok(())
}

fn caloron_factor() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in [3, 8] {
        for k in 1..=4 {
            let p = SymmetricTensor::<Q>::random(n, k, &mut rng);
            if let Some(w) = caloron_check(&p).map_err(err)? {
                return Err(format!("dim {n}, k = {k}: {w}"));
            }
        }
    }
    Ok(())
}

fn negative_controls() -> Outcome {
    let broken: Algebra =
        LieAlgebra::from_json(&json!({ "name": "broken", "dim": 3, "c": [[2, 1, 2, "1"], [1, 2, 3, "1"]] })).map_err(err)?;
    let report = broken.validate();
    let jac = report.checks.iter().find(|c| c.name == "jacobi").ok_or("no jacobi check")?;
    check(!jac.pass && jac.witness.is_some(), || "broken Jacobi identity accepted".into())?;

    let a = su2::<Q>().unwrap();
    // ⟨x, y⟩ weighted by a non-scalar diagonal is not ad-invariant
    let t = SymmetricTensor::from_sorted_fn(3, 2, |ix| if ix[0] == ix[1] { q(ix[0] as i64 + 1, 1) } else { q(0, 1) }, Scale::one());
    match InvariantPolynomial::new(&a, t, "diag(1,2,3)") {
        Err(Error::NotInvariant(_)) => {}
        other => return Err(format!("non-invariant tensor not rejected: {:?}", other.map(|p| p.label().to_string()))),
    }

    let p = metric_polynomial(&a, Scale::one()).map_err(err)?;
    let r = verify_string_transgression(&p, &a, Variant::PaperDisplay, SAMPLES, SEED).map_err(err)?;
    check(!r.pass && r.witness.is_some(), || "display-sign variant was not rejected with a witness".into())?;
    println!("    paper_display witness stage: {}", r.witness.as_ref().and_then(|w| w.get("stage")).cloned().unwrap_or_default());
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 transgression coefficients, integral = closed for k = 1..5 on su2, su3", transgression_coefficients),
        ("2 based universal string class (1/48π²)⟨[Θ,Θ],Θ⟩", based_class),
        ("3 normalized universal class on su2, mq_phi path agrees", normalized_universal_class),
        ("4 string class = τ_G for metric and su3 trace:3", string_equals_transgression),
        ("5 closedness of τ and τ_G", closedness),
        ("6 structural suite on 100 elements for su2, su3", structural),
        ("7 caloron k-factor for k = 1..4", caloron_factor),
        ("8 negative controls", negative_controls),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match &outcome {
            Ok(()) => println!("PASS criterion {name} ({ms} ms)"),
            Err(why) => {
                println!("FAIL criterion {name} ({ms} ms): {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
