//! Exact computation in quantum algebras presented by generators and
//! relations: normal forms, conjugation automorphisms, semi-invariants and
//! inner skew-derivation witnesses.

pub mod algebra;
pub mod auto;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod frontend;
pub mod linalg;
pub mod scalar;
pub mod solve;

pub use error::{Error, Result};
