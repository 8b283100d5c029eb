//! Weighted operator means on real symmetric positive definite matrices.
//!
//! The crate provides the three classical weighted means
//! (arithmetic `∇_α`, geometric `♯_α`, harmonic `!_α`), the power-mean
//! family that interpolates between them, Loewner-order comparison with
//! quantified gaps, a small catalog of scalar functions lifted by spectral
//! calculus, constructive positive linear maps, and a suite of refinement
//! inequality chains built from all of the above. Everything is pure and
//! immutable; values are safe to share across threads.

pub mod error;
pub mod functions;
pub mod inequalities;
pub mod loewner;
pub mod maps;
pub mod means;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use loewner::{check_chain, loewner_leq, operator_norm, ChainReport, OrderVerdict};
pub use means::{PathSpec, UnrestrictedWeight, Weight};
pub use spectral::{EigenSystem, PosDefMatrix, SymMatrix};
