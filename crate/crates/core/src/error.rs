use thiserror::Error;

use crate::morph::HomViolation;
use crate::ring::AxiomViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a ring needs at least two elements (got {size})")]
    Degenerate { size: usize },

    #[error("ring axiom violated: {0}")]
    Axiom(AxiomViolation),

    #[error("size budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: String, needed: usize, limit: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("ideal {0} is not proper")]
    NotProper(String),

    #[error("not a ring homomorphism: {0}")]
    NotHom(HomViolation),

    #[error("operands live in different rings")]
    HostMismatch,

    #[error("cannot read {literal:?} in {ring}: {reason}")]
    Literal { literal: String, ring: String, reason: String },

    #[error("search interrupted")]
    Interrupted,

    /// A construction produced data contradicting its own invariants.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
