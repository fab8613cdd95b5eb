//! Dedekind η and the discriminant Δ on the upper half plane.

use num_complex::Complex;

use crate::numerics::complex::{exp, scale};
use crate::numerics::Real;

use super::pochhammer::log_qpoch_inf_complex_base;
use super::{EvalConfig, QSeriesError, Result, SeriesValue};

fn nome_log<T: Real>(tau: &Complex<T>, op: &'static str) -> Result<Complex<T>> {
    if !tau.im.is_positive() {
        return Err(QSeriesError::Domain {
            op,
            detail: format!("Im tau = {} must be positive", tau.im),
        });
    }
    let two_pi = T::lit(2.0) * T::pi();
    Ok(Complex::new(
        -two_pi.clone() * tau.im.clone(),
        two_pi * tau.re.clone(),
    ))
}

/// `log (q;q)_∞` at `q = e^{2πiτ}`, plus `2πiτ`.
fn euler_log<T: Real>(
    tau: &Complex<T>,
    cfg: &EvalConfig<T>,
    op: &'static str,
) -> Result<(Complex<T>, SeriesValue<T>)> {
    let lq = nome_log(tau, op)?;
    let q = exp(&lq);
    Ok((lq, log_qpoch_inf_complex_base(&q, &q, cfg)?))
}

/// `η(τ) = q^{1/24} (q;q)_∞`, `q = e^{2πiτ}`.
pub fn dedekind_eta<T: Real>(tau: &Complex<T>, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    let (lq, l) = euler_log(tau, cfg, "dedekind_eta")?;
    SeriesValue {
        value: scale(&lq, &T::from_ratio(1, 24)) + l.value,
        ..l
    }
    .exp()
}

/// `Δ(τ) = (2π)^{12} q (q;q)_∞^{24}`.
pub fn weierstrass_delta<T: Real>(tau: &Complex<T>, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    let (lq, l) = euler_log(tau, cfg, "weierstrass_delta")?;
    let c = T::lit(12.0) * (T::lit(2.0) * T::pi()).ln();
    let k = T::lit(24.0);
    SeriesValue {
        value: Complex::new(c, T::zero()) + lq + scale(&l.value, &k),
        err_bound: l.err_bound * k,
        terms_used: l.terms_used,
    }
    .exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::complex::powi;

    #[test]
    fn eta_at_i() {
        let cfg = EvalConfig::with_tol(1e-16);
        let e = dedekind_eta(&Complex::new(0.0, 1.0), &cfg).unwrap();
        assert!((e.value.re - 0.768_225_422_326_056_7).abs() < 1e-14);
        assert!(e.value.im.abs() < 1e-15);
    }

    #[test]
    fn delta_over_eta24() {
        let cfg = EvalConfig::with_tol(1e-16);
        for tau in [
            Complex::new(0.0, 1.0),
            Complex::new(0.0, 2.0),
            Complex::new(0.3, 0.8),
        ] {
            let d = weierstrass_delta(&tau, &cfg).unwrap();
            let e = dedekind_eta(&tau, &cfg).unwrap();
            let ratio = d.value / powi(&e.value, 24);
            let target = (2.0 * std::f64::consts::PI).powi(12);
            assert!((ratio - Complex::new(target, 0.0)).norm() < 1e-10 * target);
        }
        let a = dedekind_eta(&Complex::new(0.2, 0.7), &cfg).unwrap();
        let b = dedekind_eta(&Complex::new(1.2, 0.7), &cfg).unwrap();
        assert!((a.value.norm() - b.value.norm()).abs() < 1e-14);
        assert!(dedekind_eta(&Complex::new(0.0, 0.0), &cfg).is_err());
    }
}
