//! Free graded-commutative algebras over formal generators, with
//! derivations, substitution and parameter integration.

mod derivation;
mod element;
mod generator;
mod monomial;
pub mod random;
pub mod serialize;

pub use derivation::Derivation;
pub(crate) use element::Accumulator;
pub use element::{linear_combination, Evaluation, GradedElement, OddPolicy};
pub use generator::{Gen, GenKind};
pub use monomial::Monomial;
