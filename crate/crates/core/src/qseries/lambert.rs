//! Lambert-type sums and weighted sums of log-Pochhammer symbols.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::q_to_real;
use crate::arith::{ArithTable, TableValues};
use crate::numerics::complex::{abs, re, real_pow, scale};
use crate::numerics::Real;

use super::pochhammer::log_qpoch_inf;
use super::tail::terms_for_tail;
use super::{
    check_q, EvalConfig, Kernel, KernelForm, QPoint, QSeriesError, Result, SeriesValue, Weight,
};

type Cx<T> = Complex<T>;

/// Which product the log is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductForm {
    /// `Σ c_n log (q^{nz}; q^n)_∞`
    FormA,
    /// `Σ c_n [log (q^{n(z+1)}; q^{2n})_∞ - log (q^{nz}; q^{2n})_∞]`
    FormB,
}

/// Single-factor logarithms `F(q^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorForm {
    /// `log(1 - q^n)`
    OneMinus,
    /// `log((1 + q^n)/(1 - q^n))`
    PlusOverMinus,
}

/// `f(n)/n^w` for `n = 1..=count`.
fn coefficients<T: Real>(f: &ArithTable<T>, count: usize, weight: Weight) -> Result<Vec<Cx<T>>> {
    if count > f.len() {
        return Err(QSeriesError::TableTooShort {
            needed: count,
            have: f.len(),
        });
    }
    let over_n = weight == Weight::OverN;
    let out = match &f.values {
        TableValues::Integer(v) => v[..count]
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let t = if over_n {
                    T::from_ratio(x, i as i128 + 1)
                } else {
                    T::from_int(x)
                };
                re(t)
            })
            .collect(),
        TableValues::Rational(v) => v[..count]
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let t: T = q_to_real(x);
                re(if over_n {
                    t / T::from_u64(i as u64 + 1).unwrap()
                } else {
                    t
                })
            })
            .collect(),
        TableValues::Complex(v) => v[..count]
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if over_n {
                    scale(x, &(T::one() / T::from_u64(i as u64 + 1).unwrap()))
                } else {
                    x.clone()
                }
            })
            .collect(),
    };
    Ok(out)
}

fn mul<T: Real>(c: &Cx<T>, x: &Cx<T>) -> Cx<T> {
    if c.im.is_zero() {
        scale(x, &c.re)
    } else if x.im.is_zero() {
        scale(c, &x.re)
    } else {
        c.clone() * x.clone()
    }
}

fn truncation<T: Real>(
    f: &ArithTable<T>,
    weight: Weight,
    r: &T,
    scale_factor: &T,
    tol: &T,
    cfg: &EvalConfig<T>,
    op: &'static str,
) -> Result<(usize, T)> {
    let g = f.growth;
    let (n, bound) = terms_for_tail(
        g.c,
        g.beta - weight.exponent(),
        r,
        scale_factor,
        tol,
        cfg.max_terms,
        op,
    )?;
    let n = usize::try_from(n).map_err(|_| QSeriesError::ConvergenceFailure {
        op,
        needed: n,
        max_terms: cfg.max_terms,
    })?;
    if n > f.len() {
        return Err(QSeriesError::TableTooShort {
            needed: n,
            have: f.len(),
        });
    }
    Ok((n, bound))
}

/// `Σ_{n≤N} f(n)/n^w · q^{nz}/(1 ∓ q^n)` with a certified tail below `cfg.tol`.
pub fn lambert_sum<T: Real>(
    f: &ArithTable<T>,
    form: KernelForm,
    pt: &QPoint<T>,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let q = &pt.q;
    let r = q.powf(&pt.z.re);
    let scale_factor = T::one() / (T::one() - q.clone());
    let (n_terms, bound) = truncation(
        f,
        form.weight,
        &r,
        &scale_factor,
        &cfg.tol,
        cfg,
        "lambert_sum",
    )?;
    let coeffs = coefficients(f, n_terms, form.weight)?;
    let x = real_pow(q, &pt.z);
    let mut xn = Cx::<T>::one();
    let mut qn = T::one();
    let mut sum = Cx::<T>::zero();
    for c in &coeffs {
        xn = mul(&xn, &x);
        qn = qn * q.clone();
        if c.is_zero() {
            continue;
        }
        let den = match form.kernel {
            Kernel::Minus => T::one() - qn.clone(),
            Kernel::Plus => T::one() + qn.clone(),
        };
        sum = sum + scale(&mul(c, &xn), &(T::one() / den));
    }
    Ok(SeriesValue {
        value: sum,
        err_bound: bound,
        terms_used: n_terms as u64,
    })
}

/// `Σ_n g(n)/n^w · L_n` for the log-products of [`ProductForm`].
///
/// Half of `cfg.tol` goes to the outer truncation, half is split among the
/// inner log-Pochhammer evaluations.
pub fn weighted_product_log<T: Real>(
    g: &ArithTable<T>,
    pt: &QPoint<T>,
    form: ProductForm,
    weight: Weight,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let q = &pt.q;
    let r = q.powf(&pt.z.re);
    let sides = match form {
        ProductForm::FormA => T::one(),
        ProductForm::FormB => T::lit(2.0),
    };
    let scale_factor = sides / ((T::one() - q.clone()) * (T::one() - r.clone()));
    let half_tol = cfg.tol.clone() / T::lit(2.0);
    let (n_terms, outer) = truncation(
        g,
        weight,
        &r,
        &scale_factor,
        &half_tol,
        cfg,
        "weighted_product_log",
    )?;
    let coeffs = coefficients(g, n_terms, weight)?;
    let x = real_pow(q, &pt.z);
    let share = half_tol / T::from_u64(n_terms.max(1) as u64).unwrap();
    let mut xn = Cx::<T>::one();
    let mut qn = T::one();
    let mut sum = Cx::<T>::zero();
    let mut inner_err = T::zero();
    let mut terms = n_terms as u64;
    for c in &coeffs {
        xn = mul(&xn, &x);
        qn = qn * q.clone();
        if c.is_zero() {
            continue;
        }
        let ca = abs(c);
        let inner = EvalConfig {
            tol: share.clone() / ca.clone().max_of(T::one()),
            max_terms: cfg.max_terms,
        };
        let l = match form {
            ProductForm::FormA => log_qpoch_inf(&xn, &qn, &inner)?,
            ProductForm::FormB => {
                let base = qn.clone() * qn.clone();
                let a = log_qpoch_inf(&scale(&xn, &qn), &base, &inner)?;
                let b = log_qpoch_inf(&xn, &base, &inner)?;
                SeriesValue {
                    value: a.value - b.value,
                    err_bound: a.err_bound + b.err_bound,
                    terms_used: a.terms_used + b.terms_used,
                }
            }
        };
        sum = sum + mul(c, &l.value);
        inner_err = inner_err + ca * l.err_bound;
        terms += l.terms_used;
    }
    Ok(SeriesValue {
        value: sum,
        err_bound: outer + inner_err,
        terms_used: terms,
    })
}

/// `Σ_n g(n)/n^w · F(q^n)` for the single-factor logs of [`FactorForm`].
pub fn weighted_factor_log<T: Real>(
    g: &ArithTable<T>,
    q: &T,
    form: FactorForm,
    weight: Weight,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    check_q(q, "weighted_factor_log")?;
    let sides = match form {
        FactorForm::OneMinus => T::one(),
        FactorForm::PlusOverMinus => T::lit(2.0),
    };
    let scale_factor = sides / (T::one() - q.clone());
    let (n_terms, bound) = truncation(
        g,
        weight,
        q,
        &scale_factor,
        &cfg.tol,
        cfg,
        "weighted_factor_log",
    )?;
    let coeffs = coefficients(g, n_terms, weight)?;
    let mut qn = T::one();
    let mut sum = Cx::<T>::zero();
    for c in &coeffs {
        qn = qn * q.clone();
        if c.is_zero() {
            continue;
        }
        let minus = (-qn.clone()).ln_1p();
        let v = match form {
            FactorForm::OneMinus => minus,
            FactorForm::PlusOverMinus => qn.ln_1p() - minus,
        };
        sum = sum + scale(c, &v);
    }
    Ok(SeriesValue {
        value: sum,
        err_bound: bound,
        terms_used: n_terms as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_table, dirichlet_convolve, FunctionId, Growth};
    use crate::qseries::{Kernel, KernelForm};

    fn cfg() -> EvalConfig<f64> {
        EvalConfig::with_tol(1e-15)
    }

    fn table(id: &str, n: usize) -> ArithTable<f64> {
        build_table(&id.parse::<FunctionId>().unwrap(), n).unwrap()
    }

    const PLAIN_MINUS: KernelForm = KernelForm::new(Kernel::Minus, Weight::Plain);
    const OVER_MINUS: KernelForm = KernelForm::new(Kernel::Minus, Weight::OverN);

    #[test]
    fn intro_lambert_series() {
        let pt = QPoint::real(0.3, 1.0).unwrap();
        let s = lambert_sum(&table("mobius", 200), PLAIN_MINUS, &pt, &cfg()).unwrap();
        assert!((s.value.re - 0.3).abs() <= s.err_bound + 1e-15);
        let pt = QPoint::real(0.25, 1.0).unwrap();
        let s = lambert_sum(&table("totient", 200), PLAIN_MINUS, &pt, &cfg()).unwrap();
        assert!((s.value.re - 0.25 / 0.5625).abs() <= s.err_bound + 1e-15);
        assert!(s.err_bound <= 1e-15);
    }

    #[test]
    fn zero_table() {
        let zero = ArithTable::<f64>::from_integers(
            FunctionId::Custom("zero".into()),
            vec![0; 4],
            Growth::new(0.0, 0.0),
        );
        let pt = QPoint::real(0.5, 1.0).unwrap();
        let s = lambert_sum(&zero, PLAIN_MINUS, &pt, &cfg()).unwrap();
        assert_eq!((s.value.re, s.err_bound), (0.0, 0.0));
        let p =
            weighted_product_log(&zero, &pt, ProductForm::FormA, Weight::OverN, &cfg()).unwrap();
        assert_eq!((p.value.re, p.err_bound), (0.0, 0.0));
    }

    #[test]
    fn ramanujan_sum_is_finite_divisor_sum() {
        let q = 0.4f64;
        let pt = QPoint::real(q, 1.0).unwrap();
        let c6 = table("ramanujan:6", 400);
        let f = dirichlet_convolve(&table("one", 400), &c6).unwrap();
        let s = lambert_sum(&f, OVER_MINUS, &pt, &cfg()).unwrap();
        let want: f64 = [1, 2, 3, 6]
            .iter()
            .map(|&d| q.powi(d) / (1.0 - q.powi(d)))
            .sum();
        assert!((s.value.re - want).abs() <= s.err_bound + 1e-14);
        let s = lambert_sum(&c6, PLAIN_MINUS, &pt, &cfg()).unwrap();
        let want: f64 = [1, 2, 3, 6].iter().map(|&d| d as f64 * q.powi(d)).sum();
        assert!((s.value.re - want).abs() <= s.err_bound + 1e-14);
    }

    #[test]
    fn short_table_is_reported() {
        let pt = QPoint::real(0.9, 1.0).unwrap();
        let e = lambert_sum(&table("totient", 10), PLAIN_MINUS, &pt, &cfg()).unwrap_err();
        assert!(matches!(e, QSeriesError::TableTooShort { .. }));
    }

    #[test]
    fn intro_products() {
        let phi = table("totient", 200);
        let s =
            weighted_factor_log(&phi, &0.5, FactorForm::OneMinus, Weight::OverN, &cfg()).unwrap();
        assert!((s.value.re + 1.0).abs() <= s.err_bound + 1e-14);
        let odd = phi.filtered("odd", |n| n % 2 == 1);
        let q = 0.4;
        let s = weighted_factor_log(&odd, &q, FactorForm::PlusOverMinus, Weight::OverN, &cfg())
            .unwrap();
        assert!((s.value.re - 2.0 * q / (1.0 - q * q)).abs() <= s.err_bound + 1e-14);
    }

    #[test]
    fn forms_match_lambert_sums() {
        let g = table("totient", 500);
        let f = table("one", 500).scaled_pow(1.into(), 1.0).unwrap();
        for z in [
            Complex::new(1.0, 0.0),
            Complex::new(0.5, 0.0),
            Complex::new(1.0, 0.5),
        ] {
            let pt = QPoint::new(0.3, z).unwrap();
            let a =
                weighted_product_log(&g, &pt, ProductForm::FormA, Weight::OverN, &cfg()).unwrap();
            let b = lambert_sum(&f, OVER_MINUS, &pt, &cfg()).unwrap();
            assert!(
                (a.value + b.value).norm() <= a.err_bound + b.err_bound + 1e-13,
                "z={z}"
            );
            let a =
                weighted_product_log(&g, &pt, ProductForm::FormB, Weight::OverN, &cfg()).unwrap();
            let b = lambert_sum(
                &f,
                KernelForm::new(Kernel::Plus, Weight::OverN),
                &pt,
                &cfg(),
            )
            .unwrap();
            assert!(
                (a.value - b.value).norm() <= a.err_bound + b.err_bound + 1e-13,
                "z={z}"
            );
        }
    }
}
