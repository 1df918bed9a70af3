//! Exact computation of integrable triples in Lie algebras, λ-brackets of
//! Poisson vertex algebras over differential polynomials, and conserved
//! densities of generalized Drinfeld–Sokolov hierarchies.
//!
//! All arithmetic is over ℚ.

pub mod ds;
pub mod error;
pub mod grading;
pub mod liealg;
pub mod linalg;
pub mod pva;
pub mod rational;

pub use error::{Error, Result};
pub use rational::{HalfInt, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
