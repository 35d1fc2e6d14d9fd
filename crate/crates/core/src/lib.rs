//! SAT decision for β-acyclic CNF formulas via ordered Davis-Putnam
//! elimination, together with the machinery around that class:
//! DP-simplicial elimination orderings, acyclicity recognition,
//! backdoor sets, brute-force oracles, and reduction-gadget generators.
//!
//! The central fact exploited here is that a β-acyclic formula admits a
//! weakly simplicial elimination ordering of its variables, along which
//! every Davis-Putnam resolution step is a subsumption step, so the
//! clause count never grows and the procedure runs in polynomial time.

pub mod backdoor;
pub mod cli;
pub mod dp;
pub mod error;
pub mod formula;
pub mod generators;
pub mod io;
pub mod oracle;
pub mod structure;

pub use error::Error;
pub use formula::{Assignment, Clause, Formula, Literal, Variable};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
