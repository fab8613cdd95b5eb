//! Serializable results. Numbers are decimal strings at full working precision.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::numerics::Real;

use super::limits::{ErrorModel, Verdict};

/// Outcome of checking one identity instance at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: String,
    /// `null` for exact records.
    pub q: Option<String>,
    pub z: Option<String>,
    pub lhs_value: String,
    pub rhs_value: String,
    /// For exact records: number of mismatching `n`.
    pub abs_diff: String,
    pub error_budget: String,
    pub tol_slack: String,
    pub pass: bool,
    pub terms_used: u64,
    pub error: Option<String>,
    pub note: Option<String>,
}

/// Outcome of one `q → 1` extrapolation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub id: String,
    pub params: String,
    pub q_grid: Vec<String>,
    /// Product values at each grid point.
    pub raw_values: Vec<String>,
    pub estimate: Option<String>,
    /// Closed-form value, or the expected verdict for divergent records.
    pub target_value: String,
    pub rel_err: Option<String>,
    pub err_estimate: Option<String>,
    pub model: ErrorModel,
    pub verdict: Option<Verdict>,
    pub pass: bool,
    pub error: Option<String>,
    pub note: Option<String>,
}

pub(crate) fn fmt_real<T: Real>(x: &T) -> String {
    x.to_decimal()
}

pub(crate) fn fmt_complex<T: Real>(z: &Complex<T>) -> String {
    if z.im.is_zero() {
        return fmt_real(&z.re);
    }
    let im = fmt_real(&z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{}{}i", fmt_real(&z.re), sign, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_strings() {
        assert_eq!(fmt_complex(&Complex::new(1.5f64, 0.0)), "1.5e0");
        assert_eq!(fmt_complex(&Complex::new(1.0f64, -2.0)), "1e0-2e0i");
        assert_eq!(fmt_complex(&Complex::new(1.0f64, 2.0)), "1e0+2e0i");
    }
}
