//! Exact analysis of bihamiltonian structures built from Lie algebras and
//! polynomial Poisson pairs.
//!
//! Everything that decides a rank, a kernel or a vanishing is computed over
//! the Gaussian rationals; floating point only appears when approximating
//! roots of a characteristic polynomial, and those roots are re-verified
//! exactly whenever they happen to be Gaussian rationals.

pub mod canonical;
pub mod catalog;
pub mod error;
pub mod integrals;
pub mod matrix;
pub mod orbits;
pub mod pencil;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod schedule;
pub mod univariate;

pub use error::{AlgebraError, AnalysisError, PencilError, PoissonError};
pub use matrix::{ExactMatrix, Vector};
pub use poly::MultiPoly;
pub use scalar::{GaussianRational, Gq};
