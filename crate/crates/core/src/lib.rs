#![allow(clippy::needless_range_loop)]

pub mod engine;
pub mod error;
pub mod gforms;
pub mod lie;
pub mod matrix;
pub mod modp;
pub mod mq;
pub mod report;
pub mod scalar;
pub mod string;
pub mod suites;
pub mod transgression;
pub mod weil;

pub use scalar::Q;

/// Concrete aliases over exact rationals.
pub type Element = engine::GradedElement<Q>;
pub type Derivation = engine::Derivation<Q>;
pub type Algebra = lie::LieAlgebra<Q>;
pub type Polynomial = lie::InvariantPolynomial<Q>;
pub type Tensor = lie::SymmetricTensor<Q>;
pub type Oracle = gforms::EqualityOracle<Q>;
pub type Verdict = gforms::OracleVerdict<Q>;
pub type GForms = gforms::GFormComplex<Q>;
pub type Weil = weil::WeilComplex<Q>;
pub type Tensorial = mq::TensorComplex<Q>;
pub type Equivariant = mq::EquivariantForm<Q>;
