//! Front end for the amalg workbench: a line-oriented spec language that
//! names rings, ideals, homs and amalgams and runs checks, the theorem
//! harness and counterexample searches over them.

pub mod ast;
pub mod diag;
pub mod elaborate;
pub mod exec;
pub mod lexer;
pub mod parser;
pub mod report;

pub use elaborate::{parse_spec, Limits, SpecModel};
pub use exec::{execute, RunConfig};
pub use report::Report;
