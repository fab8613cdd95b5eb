//! Lambert series and Euler q-exponential products at configurable precision.
//!
//! The evaluators are generic over [`numerics::Real`]; `f64` is the hardware
//! instantiation and [`Mpf`] the MPFR-backed one used for certified checks.
//!
//! - [`numerics`]: scalars, ζ/β and constants, extrapolation
//! - [`arith`]: sieved arithmetic-function tables and the Dirichlet algebra
//! - [`qseries`]: q-Pochhammer symbols, q-exponentials, θ/η, Lambert sums and weighted log-products
//! - [`identities`]: the identity catalog, verification and q↑1 limit checks

pub mod arith;
pub mod identities;
pub mod numerics;
pub mod qseries;

pub use numerics::{Mpf, Precision, Real};

/// Complex scalar over the MPFR float.
pub type MpComplex = num_complex::Complex<Mpf>;
/// Complex scalar over `f64`.
pub type F64Complex = num_complex::Complex<f64>;
/// Arithmetic table with MPFR-valued entries.
pub type MpTable = arith::ArithTable<Mpf>;
/// Series value at MPFR precision.
pub type MpSeriesValue = qseries::SeriesValue<Mpf>;
