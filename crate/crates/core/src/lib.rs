//! Belief change with attributive (latent) beliefs.
//!
//! External information arrives as an essence proposition bundled with
//! belief triplets `P(P1, P2)`: once `P1` is believed, `P2` surfaces as part of
//! `P`. This crate provides the propositional kernel, the association function
//! that derives such triplets from literal-level links, the closure operator
//! producing belief sets, the expansion / partial meet contraction / revision
//! operators, a randomized postulate conformance harness, and a small scenario
//! language.

pub mod association;
pub mod belief;
pub mod error;
pub mod logic;
pub mod operators;
pub mod scenario;
pub mod suite;

pub use error::Error;
