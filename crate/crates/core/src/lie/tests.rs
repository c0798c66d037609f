use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::*;
use num_traits::Zero;

use crate::scalar::{q, Q};

#[test]
fn builtins_validate() {
    for name in ["abelian(1)", "abelian:2", "su2", "su3"] {
        let a: LieAlgebra<Q> = builtin(name).unwrap();
        let r = a.validate();
        assert!(r.pass(), "{name}: {r}");
    }
}

#[test]
fn su2_constants_are_epsilon() {
    let a: LieAlgebra<Q> = su2().unwrap();
    assert_eq!(*a.c(0, 1, 2), q(1, 1));
    assert_eq!(*a.c(1, 2, 0), q(1, 1));
    assert_eq!(*a.c(2, 0, 1), q(1, 1));
    assert_eq!(*a.c(2, 1, 0), q(-1, 1));
    let from_matrices = a.realization().unwrap().structure_constants().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(from_matrices[(i * 3 + j) * 3 + k], *a.c(i, j, k));
            }
        }
    }
}

#[test]
fn su3_shape() {
    let a: LieAlgebra<Q> = su3().unwrap();
    assert_eq!(a.dim(), 8);
    for i in 0..8 {
        for j in 0..8 {
            let expect = if i != j {
                q(0, 1)
            } else if i == 7 {
                q(3, 1)
            } else {
                q(1, 1)
            };
            assert_eq!(a.metric()[(i, j)], expect);
        }
    }
    // Lowered constants are totally antisymmetric.
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                assert_eq!(a.c_lower(i, j, k), -a.c_lower(j, i, k));
                assert_eq!(a.c_lower(i, j, k), -a.c_lower(i, k, j));
            }
        }
    }
    assert_eq!(*a.c(2, 0, 1), q(1, 1));
}

#[test]
fn heisenberg_metric_not_invariant() {
    let a: LieAlgebra<Q> = LieAlgebra::from_fn(
        "heis",
        3,
        |i, j, k| if (i, j, k) == (2, 0, 1) { q(1, 1) } else { q(0, 1) },
        crate::matrix::Matrix::identity(3),
    )
    .unwrap();
    let r = a.validate();
    assert!(!r.pass());
    let failed: Vec<&str> = r.failures().map(|c| c.name).collect();
    assert_eq!(failed, vec!["metric_invariant"]);
}

#[test]
fn broken_jacobi_detected() {
    let v = json!({"name": "broken", "dim": 3, "c": [[2, 1, 2, "1"], [1, 2, 3, "1"]]});
    let a: LieAlgebra<Q> = LieAlgebra::from_json(&v).unwrap();
    let r = a.validate();
    let jac = r.checks.iter().find(|c| c.name == "jacobi").unwrap();
    assert!(!jac.pass);
    assert!(jac.witness.is_some());
}

#[test]
fn file_format_round_trip_and_errors() {
    let a: LieAlgebra<Q> = su3().unwrap();
    let b: LieAlgebra<Q> = LieAlgebra::from_json(&a.to_json()).unwrap();
    assert_eq!(a.metric(), b.metric());
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                assert_eq!(a.c(i, j, k), b.c(i, j, k));
            }
        }
    }
    let bad = json!({"dim": 2, "metric": [["1", "0"]]});
    assert!(matches!(LieAlgebra::<Q>::from_json(&bad), Err(Error::DimensionMismatch(_))));
    let bad = json!({"dim": 2, "c": [[3, 1, 2, "1"]]});
    assert!(matches!(LieAlgebra::<Q>::from_json(&bad), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(builtin::<Q>("so5"), Err(Error::UnknownAlgebra(_))));
}

#[test]
fn metric_polynomials() {
    let a: LieAlgebra<Q> = su2().unwrap();
    let p = metric_polynomial(&a, Scale::one()).unwrap();
    assert_eq!(*p.get(&[0, 0]), q(1, 1));
    assert_eq!(*p.get(&[0, 1]), q(0, 1));
    let p = metric_polynomial(&a, Scale::string_normalization()).unwrap();
    assert_eq!(p.scale().coeff, q(-1, 8));
    assert_eq!(p.scale().pi_inv_power, 2);
    let b: LieAlgebra<Q> = abelian(2).unwrap();
    let p = metric_polynomial(&b, Scale::one()).unwrap();
    assert_eq!(p.components(), &[q(1, 1), q(0, 1), q(0, 1), q(1, 1)]);
}

#[test]
fn symmetric_powers() {
    let a: LieAlgebra<Q> = su2().unwrap();
    let p2 = sym_power_polynomial(&a, 2).unwrap();
    assert_eq!(p2.tensor(), metric_polynomial(&a, Scale::one()).unwrap().tensor());
    let p4 = sym_power_polynomial(&a, 4).unwrap();
    assert_eq!(*p4.get(&[0, 0, 0, 0]), q(1, 1));
    assert_eq!(*p4.get(&[0, 0, 1, 1]), q(1, 3));
    assert_eq!(*p4.get(&[0, 1, 0, 1]), q(1, 3));
    assert_eq!(*p4.get(&[0, 0, 0, 1]), q(0, 1));
    let b: LieAlgebra<Q> = abelian(1).unwrap();
    assert_eq!(*sym_power_polynomial(&b, 4).unwrap().get(&[0, 0, 0, 0]), q(1, 1));
    assert!(matches!(sym_power_polynomial(&a, 3), Err(Error::BadDegree(3, _))));
}

#[test]
fn trace_forms_on_su3() {
    let a: LieAlgebra<Q> = su3().unwrap();
    let p2 = trace_polynomial(&a, 2).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(*p2.get(&[i, j]), a.metric()[(i, j)].clone() / q(2, 1));
        }
    }
    let p3 = trace_polynomial(&a, 3).unwrap();
    assert!(!p3.is_zero());
    // d_{118} ∝ tr(λ1 λ1 λ8') ≠ 0
    assert!(!p3.get(&[0, 0, 7]).is_zero());
    let b: LieAlgebra<Q> = su2().unwrap();
    assert!(trace_polynomial(&b, 3).unwrap().is_zero());
}

#[test]
fn non_invariant_rejected() {
    let a: LieAlgebra<Q> = su2().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = SymmetricTensor::<Q>::random(3, 2, &mut rng);
    assert!(matches!(InvariantPolynomial::new(&a, t, "random"), Err(Error::NotInvariant(_))));
    let diag =
        SymmetricTensor::new(3, 2, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(2, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)], Scale::one())
            .unwrap();
    assert!(InvariantPolynomial::new(&a, diag, "diag").is_err());
}

#[test]
fn asymmetric_rejected() {
    let t = SymmetricTensor::<Q>::new(2, 2, vec![q(1, 1), q(1, 1), q(0, 1), q(1, 1)], Scale::one());
    assert!(matches!(t, Err(Error::NotSymmetric(_))));
}

#[test]
fn polynomial_specs() {
    let a: LieAlgebra<Q> = su2().unwrap();
    assert_eq!(parse_polynomial(&a, "metric").unwrap().degree(), 2);
    assert_eq!(parse_polynomial(&a, "metric-normalized").unwrap().scale().pi_inv_power, 2);
    assert_eq!(parse_polynomial(&a, "sym_power:4").unwrap().degree(), 4);
    assert!(parse_polynomial(&a, "cubic").is_err());
    assert!(parse_polynomial(&a, "sym_power:x").is_err());
}

#[test]
fn sorted_tuple_count() {
    assert_eq!(sorted_tuples(8, 3).len(), 120);
    assert_eq!(sorted_tuples(3, 1).len(), 3);
}
