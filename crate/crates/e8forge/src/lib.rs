//! Exact construction of the exceptional Lie algebra e8 from its gradings by
//! the abelian groups Z3, Z4, Z5, Z6, Z3xZ3 and Z2xZ4, with machine checks
//! for everything the construction promises: the Jacobi identity over all
//! basis triples, grading closure and fullness, the scalar constraint
//! systems, Killing-form properties, a simplicity probe, and the diagonal
//! rescaling isomorphisms between scalar choices.
//!
//! All arithmetic is exact rational; there are no tolerances anywhere.
//!
//! Entry points:
//! - [`models::ModelId`] names the six graded models; [`models::model_spec`]
//!   binds scalars to one of them.
//! - [`assemble::assemble`] turns a [`grading::ModelSpec`] into a
//!   [`assemble::GradedAlgebra`] with its 248-dimensional basis and sparse
//!   structure constants.
//! - [`verify`], [`killing`] and [`ideal`] hold the verifiers.
//! - [`export`] reads and writes the structure-constant interchange file.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `e8forge` binary exposes the same operations for scripted use.

pub mod assemble;
pub mod export;
pub mod exterior;
pub mod grading;
pub mod ideal;
pub mod killing;
pub mod models;
pub mod rank;
pub mod report;
pub mod scalar;
pub mod verify;

pub use assemble::{assemble, Element, GradedAlgebra};
pub use exterior::{
    contract, dual_bracket, form, pairing, sl_action, star, tilde, wedge, Blade, MultiVector,
    SlElement, VolumeForm,
};
pub use grading::{BracketRule, ComponentShape, GradingGroup, GroupElement, ModelSpec};
pub use models::ModelId;
pub use scalar::{format_scalar, parse_scalar, Scalar};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("duality error: {0}")]
    Duality(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("malformed scalar: {0:?}")]
    BadScalar(String),
    #[error("scalar {0:?} is not bound by the assignment")]
    UnboundScalar(String),
    #[error("scalar {0:?} must be nonzero")]
    ZeroScalar(String),
    #[error("free parameter {0:?} is missing")]
    MissingFree(String),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("unknown scalar name {0:?} for this model")]
    UnknownScalar(String),
    #[error("basis index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("bracket rule for ({0}, {1}) produced a result of the wrong degree")]
    WrongDegree(String, String),
    #[error("rescaling multiplier for component {0} must be nonzero")]
    ZeroMultiplier(String),
    #[error("malformed constants file: {0}")]
    BadConstantsFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
