//! Exact and limiting one-point distributions for the totally asymmetric
//! simple exclusion process on a ring, with a brute-force generator oracle
//! and a kinetic Monte Carlo simulator for validation.

pub mod error;
pub mod finite_time;
pub mod harness;
pub mod limit_dist;
pub mod linalg;
pub mod quadrature;
pub mod ring_bethe;
pub mod tasep_sim;

pub use error::{Error, Result};
