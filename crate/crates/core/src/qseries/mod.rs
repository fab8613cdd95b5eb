//! q-Pochhammer symbols, Euler's q-exponentials, θ/η primitives and the two
//! workhorse evaluators (Lambert sums and weighted log-products).
//!
//! Every evaluator returns a [`SeriesValue`]: the computed value, an absolute
//! bound on the discarded tail, and how many terms were summed. Products are
//! accumulated as logarithms and exponentiated at most once.

mod lambert;
mod modular;
mod pochhammer;
mod tail;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::complex::{abs, exp, re};
use crate::numerics::{NumericsError, Real};

pub use lambert::{
    lambert_sum, weighted_factor_log, weighted_product_log, FactorForm, ProductForm,
};
pub use modular::{dedekind_eta, weierstrass_delta};
pub use pochhammer::{
    big_e_q, big_e_q_series, e_q, e_q_series, log_qpoch_inf, log_qpoch_inf_complex_base,
    q_binomial_check, q_gamma, q_gamma_reflection, qpoch_inf, qpoch_n, triple_product,
};
pub use tail::{geometric_poly_tail, terms_for_tail};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QSeriesError {
    #[error("{op}: outside domain ({detail})")]
    Domain { op: &'static str, detail: String },
    #[error("{op}: would need {needed} terms, above max_terms = {max_terms}")]
    ConvergenceFailure {
        op: &'static str,
        needed: u64,
        max_terms: u64,
    },
    #[error("table has {have} entries but {needed} are needed")]
    TableTooShort { needed: usize, have: usize },
    #[error("{0}: pole")]
    Pole(&'static str),
    #[error("{0}: result is not finite")]
    Overflow(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T, E = QSeriesError> = std::result::Result<T, E>;

/// Evaluation point: `0 < q < 1` and a complex `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoint<T> {
    pub q: T,
    pub z: Complex<T>,
}

impl<T: Real> QPoint<T> {
    /// A point in the domain of the Lambert and product evaluators (`Re z > 0`).
    pub fn new(q: T, z: Complex<T>) -> Result<Self> {
        check_q(&q, "QPoint")?;
        if !z.re.is_positive() {
            return Err(QSeriesError::Domain {
                op: "QPoint",
                detail: format!("Re z = {} must be positive", z.re),
            });
        }
        Ok(Self { q, z })
    }

    pub fn real(q: T, z: T) -> Result<Self> {
        Self::new(q, re(z))
    }
}

pub(crate) fn check_q<T: Real>(q: &T, op: &'static str) -> Result<()> {
    if q.is_positive() && *q < T::one() {
        Ok(())
    } else {
        Err(QSeriesError::Domain {
            op,
            detail: format!("q = {q} must lie in (0, 1)"),
        })
    }
}

/// A series or product value with a certified truncation bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Complex<T>,
    /// Absolute bound on `|true value - value|` from truncation.
    pub err_bound: T,
    pub terms_used: u64,
}

impl<T: Real> SeriesValue<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Self {
            value,
            err_bound: T::zero(),
            terms_used: 0,
        }
    }

    /// `exp` of a log-space value; the bound becomes `|e^v| · expm1(err)`.
    pub fn exp(&self) -> Result<Self> {
        let value = exp(&self.value);
        let err_bound = abs(&value) * self.err_bound.exp_m1();
        if !value.re.is_finite() || !value.im.is_finite() || !err_bound.is_finite() {
            return Err(QSeriesError::Overflow("exp"));
        }
        Ok(Self {
            value,
            err_bound,
            terms_used: self.terms_used,
        })
    }
}

/// Denominator of the Lambert kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `q^{nz} / (1 - q^n)`
    Minus,
    /// `q^{nz} / (1 + q^n)`
    Plus,
}

/// Whether coefficients are divided by `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    OverN,
    Plain,
}

impl Weight {
    pub(crate) fn exponent(self) -> f64 {
        match self {
            Weight::OverN => 1.0,
            Weight::Plain => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelForm {
    pub kernel: Kernel,
    pub weight: Weight,
}

impl KernelForm {
    pub const fn new(kernel: Kernel, weight: Weight) -> Self {
        Self { kernel, weight }
    }
}

/// Truncation tolerance and term cap shared by all evaluators.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig<T> {
    pub tol: T,
    pub max_terms: u64,
}

impl<T: Real> Default for EvalConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-25),
            max_terms: 1_000_000,
        }
    }
}

impl<T: Real> EvalConfig<T> {
    pub fn with_tol(tol: T) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}
