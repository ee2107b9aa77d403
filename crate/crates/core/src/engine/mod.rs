//! Preconditioning and lazy evaluation of a fixed polynomial at many points.

mod analyse;
mod evaluate;
mod horner;
mod newton;
mod polynomial;
mod powers;
mod precondition;

use thiserror::Error;

use crate::cover::CoverError;

pub use analyse::{analyse, AnalysisReport, Regime};
pub use evaluate::{evaluate, evaluate_derivative, kept_indices, EvalReport};
pub use horner::{horner_reference, horner_report};
pub use newton::{newton_iterate, newton_step, NewtonOutcome};
pub use polynomial::Polynomial;
pub use precondition::{precondition, PreconditionedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("derivative vanishes at the current point")]
    DerivativeZero,
    #[error("preconditionings use different precisions ({0} and {1})")]
    PrecisionMismatch(u32, u32),
    #[error(transparent)]
    Cover(#[from] CoverError),
}
