use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown algebra `{0}` (expected abelian(n), su2 or su3)")]
    UnknownAlgebra(String),
    #[error("invalid algebra file: {0}")]
    AlgebraFile(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("degree {0} is not allowed here: {1}")]
    BadDegree(usize, String),
    #[error("tensor is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("tensor is not ad-invariant: {0}")]
    NotInvariant(String),
    #[error("derivation `{derivation}` has no action on generator {generator}")]
    MissingAction { derivation: String, generator: String },
    #[error("derivations `{0}` and `{1}` have different parity")]
    ParityMismatch(String, String),
    #[error("generator {0} has no assigned value")]
    Unassigned(String),
    #[error("odd generator {0} present but odd generators were rejected")]
    OddGenerator(String),
    #[error("generator {0} does not belong to this model")]
    ForeignGenerator(String),
    #[error("element is not polynomial of the expected shape: {0}")]
    Shape(String),
    #[error("algebra `{0}` has no exact adjoint sampler")]
    UnsupportedAlgebra(String),
    #[error("element is not basic: {0}")]
    NotBasic(String),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
