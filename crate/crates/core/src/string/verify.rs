//! Checks tying the universal string class to the equivariant transgression.

use serde_json::{json, Value};

use super::universal::{universal_string_class, UniversalClass, Variant};
use crate::engine::{Gen, GenKind, GradedElement};
use crate::error::Result;
use crate::gforms::{EqualityOracle, OracleVerdict};
use crate::lie::{InvariantPolynomial, LieAlgebra};
use crate::mq::TensorComplex;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::transgression::{equivariant_transgress, transgress_closed};

type E<S> = GradedElement<S>;

fn verdict_witness<S: Scalar>(v: &OracleVerdict<S>) -> Value {
    v.witness.as_ref().map(|w| w.to_json()).unwrap_or(Value::Null)
}

fn class_or_report<S: Scalar>(
    complex: &TensorComplex<S>,
    p: &InvariantPolynomial<S>,
    variant: Variant,
    oracle: &EqualityOracle<S>,
    report: Report,
) -> std::result::Result<UniversalClass<S>, Box<Report>> {
    match universal_string_class(complex, p, variant, oracle) {
        Ok(c) => Ok(c),
        Err(e) => Err(Box::new(report.failed(json!({ "stage": "universal_string_class", "error": e.to_string() })))),
    }
}

/// The universal string class (for `variant`) is oracle-equal to the
/// equivariant transgression of p.
pub fn verify_string_transgression<S: Scalar>(
    p: &InvariantPolynomial<S>,
    algebra: &LieAlgebra<S>,
    variant: Variant,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let report = Report::new("string_class_equals_equivariant_transgression", algebra.name(), p.label());
    let complex = TensorComplex::new(algebra)?;
    let oracle = EqualityOracle::new(algebra, samples, seed)?;
    let class = match class_or_report(&complex, p, variant, &oracle, report.clone()) {
        Ok(c) => c,
        Err(r) => return Ok(*r),
    };
    if class.phi_agrees == Some(false) {
        return Ok(report.failed(json!({ "stage": "mq_phi_agreement" })));
    }
    let tau = equivariant_transgress(complex.gforms(), p)?;
    let v = oracle.equal(class.form.element(), tau.form.element());
    Ok(report.verdict(v.equal, || verdict_witness(&v)))
}

/// χ = 0, A = Ā = identity (so Θ̂ = Θ).
fn specialize_trivial<S: Scalar>(x: &E<S>) -> E<S> {
    x.substitute(|g| match g.kind() {
        GenKind::Chi => Some(E::zero()),
        GenKind::Ad | GenKind::AdInv => Some(if g.i() == g.j() { E::one() } else { E::zero() }),
        GenKind::ThetaHat => Some(E::gen(Gen::mc(g.i()))),
        _ => None,
    })
}

/// The universal string class is d_G-closed, invariant under every total
/// Lie derivative, and restricts to τ(p) at χ = 0, g = 1.
pub fn verify_universal_consistency<S: Scalar>(
    p: &InvariantPolynomial<S>,
    algebra: &LieAlgebra<S>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let report = Report::new("universal_class_consistency", algebra.name(), p.label());
    let complex = TensorComplex::new(algebra)?;
    let oracle = EqualityOracle::new(algebra, samples, seed)?;
    let class = match class_or_report(&complex, p, Variant::Rederived, &oracle, report.clone()) {
        Ok(c) => c,
        Err(r) => return Ok(*r),
    };
    let closed = class.form.is_closed(complex.gforms(), &oracle)?;
    if !closed.equal {
        return Ok(report.failed(json!({ "stage": "d_G closed", "residual": verdict_witness(&closed) })));
    }
    if let Some((i, v)) = class.form.invariance(complex.gforms(), &oracle)? {
        return Ok(report.failed(json!({ "stage": format!("L_{} invariant", i + 1), "residual": verdict_witness(&v) })));
    }
    let tau = transgress_closed(complex.gforms(), p)?;
    let restricted = specialize_trivial(class.form.element());
    let diff = &restricted - tau.form.element();
    Ok(report.verdict(diff.is_zero(), || json!({ "stage": "restriction equals transgression", "residual": diff.to_pretty() })))
}
