//! Theorem suites over a corpus of finite rings, modules and algebras, with
//! deterministic machine-readable reports.

pub mod corpus;
pub mod hypothesis;
pub mod report;
pub mod serial;
pub mod suites;

use modlab_core::functor::FunctorError;
use modlab_core::linalg::LinalgError;
use modlab_core::module::ModuleError;
use modlab_core::ring::RingError;
use thiserror::Error;

pub use corpus::{generate, Corpus, CorpusRing, Entry, Manifest};
pub use hypothesis::{pair_regime, ring_regime, Regime};
pub use report::{Case, Report, Status, Summary};
pub use suites::{run_suite, Suite, SuiteOptions};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Ring(#[from] RingError),
    #[error("{0}")]
    Module(#[from] ModuleError),
    #[error("{0}")]
    Functor(#[from] FunctorError),
}

impl VerifyError {
    /// Prefixes the message with the id of the object that failed to load.
    pub fn context(self, id: &str) -> VerifyError {
        match self {
            VerifyError::Parse(s) => VerifyError::Parse(format!("{}: {}", id, s)),
            other => VerifyError::Parse(format!("{}: {}", id, other)),
        }
    }
}
