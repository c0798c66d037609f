//! Lie algebra coefficient data and invariant polynomials.

mod algebra;
mod polynomial;
mod realization;
pub mod valued;

use std::path::Path;

pub use algebra::{AxiomCheck, LieAlgebra, ValidationReport};
pub use polynomial::{
    metric_polynomial, parse_polynomial, sorted_tuples, sym_power_polynomial, trace_polynomial, InvariantPolynomial, Scale, SymmetricTensor,
};
pub use realization::{su2_matrices, su3_matrices, Realization};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The abelian Lie algebra ℝⁿ with the standard metric.
pub fn abelian<S: Scalar>(n: usize) -> Result<LieAlgebra<S>> {
    LieAlgebra::from_parts(format!("abelian({n})"), n, vec![S::zero(); n * n * n], Matrix::identity(n))
}

/// su(2) with c^i_{jk} = ε_{ijk} and identity metric.
pub fn su2<S: Scalar>() -> Result<LieAlgebra<S>> {
    let alg = LieAlgebra::from_fn("su2", 3, |i, j, k| S::int(realization::levi_civita(i, j, k)), Matrix::identity(3))?;
    Ok(alg.with_realization(Realization::new(su2_matrices())?))
}

/// su(3) in the basis −(i/2)λ_1..λ_7, −(i/2)diag(1,1,−2) with metric
/// ⟨X, Y⟩ = −2 tr(XY) = diag(1,…,1,3).
pub fn su3<S: Scalar>() -> Result<LieAlgebra<S>> {
    let r = Realization::new(su3_matrices())?;
    let c = r.structure_constants()?;
    let basis = r.basis();
    let two = S::int(2);
    let metric = Matrix::from_fn(8, 8, |i, j| two.clone() * basis[i].frobenius(&basis[j]));
    Ok(LieAlgebra::from_parts("su3", 8, c, metric)?.with_realization(r))
}

/// Resolves `abelian(n)`, `abelian:n`, `su2` or `su3`.
pub fn builtin<S: Scalar>(name: &str) -> Result<LieAlgebra<S>> {
    let name = name.trim();
    match name {
        "su2" => return su2(),
        "su3" => return su3(),
        _ => {}
    }
    let n = name
        .strip_prefix("abelian")
        .and_then(|rest| rest.strip_prefix(':').or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')'))))
        .and_then(|n| n.trim().parse::<usize>().ok())
        .filter(|n| (1..=64).contains(n))
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    abelian(n)
}

/// A builtin name, or a path to an algebra file.
pub fn load_algebra<S: Scalar>(spec: &str) -> Result<LieAlgebra<S>> {
    match builtin(spec) {
        Ok(a) => Ok(a),
        Err(e) => {
            let path = Path::new(spec);
            if !path.is_file() {
                return Err(e);
            }
            let text = std::fs::read_to_string(path).map_err(|e| Error::AlgebraFile(format!("{spec}: {e}")))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::AlgebraFile(format!("{spec}: {e}")))?;
            LieAlgebra::from_json(&v)
        }
    }
}

#[cfg(test)]
mod tests;
