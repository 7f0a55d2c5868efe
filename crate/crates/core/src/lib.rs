//! Exact and 2-adic computation of Schröder numbers and related sequences,
//! with verifiers for Stern-type congruences and their supporting lemmas.

pub mod arith;
pub mod cli;
pub mod congruences;
pub mod error;
pub mod fastmod;
pub mod oracles;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
