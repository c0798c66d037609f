//! Bi-invariantly generated forms on G under conjugation: Maurer-Cartan
//! generators, adjoint-matrix symbols, χ variables and the equality oracle.

mod adjoint;
mod complex;
mod oracle;

pub use adjoint::{
    elementary_adjoint, is_automorphism, preserves_metric, pythagorean, sample_adjoint_point, sample_adjoint_with, AdjointPoint,
};
pub use complex::{gform_contraction, gform_differential, gform_generators, hat_theta, iota_chi, GFormComplex};
pub use oracle::{equality_oracle, EqualityOracle, OracleVerdict, SamplePoint, Witness};
