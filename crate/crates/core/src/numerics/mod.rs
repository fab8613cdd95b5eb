//! Configurable-precision scalars, classical constants and extrapolation.

pub mod complex;
mod constants;
mod extrapolate;
mod mpf;
mod real;
mod zeta;

use thiserror::Error;

pub use constants::{catalan, euler_gamma, glaisher, zeta2, zeta_at, zeta_prime_minus_one};
pub use extrapolate::{extrapolate_with_basis, richardson_extrapolate, ErrorTerm};
pub use mpf::{Mpf, Precision, DEFAULT_BITS};
pub use real::Real;
pub use zeta::{bernoulli, dirichlet_beta, hurwitz_zeta_bounded, zeta, zeta_deriv, Bounded};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("overflow in {0}")]
    Overflow(&'static str),
}
