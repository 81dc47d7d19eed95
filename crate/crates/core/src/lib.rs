//! Finite rings given by operation tables, amalgamated algebras along an
//! ideal, and bounded-degree checkers for the Armendariz family of ring
//! properties.

pub mod construct;
mod error;
pub mod morph;
pub mod notation;
pub mod poly;
pub mod properties;
pub mod ring;
pub mod search;
pub mod theorems;

pub use error::Error;
pub use ring::{verify_axioms, AxiomViolation, Elem, ElementSet, FiniteRing, Law, RingTables};
