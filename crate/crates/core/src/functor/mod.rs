//! Functors on algebras attached to modules: quasi-coherent evaluation, module
//! schemes, the extension `𝒩^r(M)`, and the transformations it classifies.

mod direct;
mod dual;
mod extension;
mod natural;
mod trunc;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::module::ModuleError;
use crate::ring::RingError;

pub use direct::{r_extension_direct, DirectExtension};
pub use dual::{
    dual_coincidence, double_dual_eval, product_embedding, scheme_comparison, star_double_dual_eval, factorization_search,
    DoubleDual, FactorizationOutcome, QcFunctor, SchemeFunctor,
};
pub use extension::{comparison_map, r_extension, symmetric_kernel_agrees, ComparisonMap, RExtension, RKernelElement};
pub use natural::{
    certified_injectivity, check_naturality, evaluation_map, induced_transformation, unit_counit_roundtrip,
    NaturalityCertificate,
};
pub use trunc::{TruncTensorAlgebra, WordSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("{0}")]
    Module(#[from] ModuleError),
    #[error("{0}")]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Ring(#[from] RingError),
    #[error("invalid input: {0}")]
    Input(String),
    /// An identity that holds by construction failed; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
