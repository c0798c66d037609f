use cartanweil::lie::{metric_polynomial, su2, su3, trace_polynomial, Scale};
use cartanweil::string::{verify_string_transgression, verify_universal_consistency, Variant};
use cartanweil::Q;

#[test]
fn su2_metric_string_class_is_equivariant_transgression() {
    let a = su2::<Q>().unwrap();
    let p = metric_polynomial(&a, Scale::one()).unwrap();
    let r = verify_string_transgression(&p, &a, Variant::Rederived, 8, 5).unwrap();
    assert!(r.pass, "{:?}", r.witness);
}

#[test]
fn su2_universal_consistency() {
    let a = su2::<Q>().unwrap();
    let p = metric_polynomial(&a, Scale::string_normalization()).unwrap();
    let r = verify_universal_consistency(&p, &a, 8, 5).unwrap();
    assert!(r.pass, "{:?}", r.witness);
}

#[test]
fn su3_metric_universal_consistency() {
    let a = su3::<Q>().unwrap();
    let p = metric_polynomial(&a, Scale::one()).unwrap();
    let r = verify_universal_consistency(&p, &a, 8, 9).unwrap();
    assert!(r.pass, "{:?}", r.witness);
}

#[test]
fn su2_paper_display_variant_fails() {
    let a = su2::<Q>().unwrap();
    let p = metric_polynomial(&a, Scale::one()).unwrap();
    let r = verify_string_transgression(&p, &a, Variant::PaperDisplay, 8, 5).unwrap();
    assert!(!r.pass);
    assert!(r.witness.is_some());
}

#[test]
fn su3_trace_polynomials_vanish_only_where_expected() {
    // tr(X^3) is a nonzero cubic invariant on su(3) but vanishes on su(2).
    assert!(!trace_polynomial(&su3::<Q>().unwrap(), 3).unwrap().is_zero());
    assert!(trace_polynomial(&su2::<Q>().unwrap(), 3).unwrap().is_zero());
}
