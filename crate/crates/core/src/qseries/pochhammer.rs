//! q-shifted factorials and the primitives built from them.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::numerics::complex::{abs, exp, ln, ln_1m, re, real_pow, scale};
use crate::numerics::Real;

use super::{check_q, EvalConfig, QSeriesError, Result, SeriesValue};

type Cx<T> = Complex<T>;

fn half<T: Real>() -> T {
    T::lit(0.5)
}

/// `log (z;q)_∞ = Σ_{j≥0} log(1 - z q^j)` for `|z| < 1`, `0 < q < 1`.
///
/// Factors are multiplied in blocks whose `Σ|z q^j|` stays below 1/2, so the
/// principal log of each block product equals the sum of the factor logs.
pub fn log_qpoch_inf<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    check_q(q, "log_qpoch_inf")?;
    log_qpoch_inf_complex_base(z, &re(q.clone()), cfg)
}

/// [`log_qpoch_inf`] with a complex base, `|q| < 1`.
pub fn log_qpoch_inf_complex_base<T: Real>(
    z: &Cx<T>,
    q: &Cx<T>,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let qa = abs(q);
    if !(qa.is_positive() && qa < T::one()) {
        return Err(QSeriesError::Domain {
            op: "log_qpoch_inf",
            detail: format!("|q| = {qa} must lie in (0, 1)"),
        });
    }
    let za = abs(z);
    if za >= T::one() {
        return Err(QSeriesError::Domain {
            op: "log_qpoch_inf",
            detail: format!("|z| = {za} must be below 1"),
        });
    }
    if za.is_zero() {
        return Ok(SeriesValue::exact(Cx::zero()));
    }
    let c = T::one() / ((T::one() - qa.clone()) * (T::one() - za.clone()));
    if z.im.is_zero() && q.im.is_zero() {
        log_qpoch_real(&z.re, &q.re, za, &c, cfg)
    } else {
        log_qpoch_cx(z, q, za, qa, &c, cfg)
    }
}

fn cap_error(j: u64, cfg_max: u64) -> QSeriesError {
    QSeriesError::ConvergenceFailure {
        op: "log_qpoch_inf",
        needed: j,
        max_terms: cfg_max,
    }
}

fn log_qpoch_real<T: Real>(
    z: &T,
    q: &T,
    za: T,
    c: &T,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let limit = half::<T>();
    let mut total = T::zero();
    let mut block = T::one();
    let mut mass = T::zero();
    let mut w = z.clone();
    let mut mag = za;
    let mut j = 0u64;
    while mag.clone() * c.clone() > cfg.tol {
        if j >= cfg.max_terms {
            return Err(cap_error(j, cfg.max_terms));
        }
        if mass.clone() + mag.clone() > limit && !mass.is_zero() {
            total = total + block.ln();
            block = T::one();
            mass = T::zero();
        }
        if mag > limit {
            total = total + (-w.clone()).ln_1p();
        } else {
            block = block * (T::one() - w.clone());
            mass = mass + mag.clone();
        }
        w = w * q.clone();
        mag = mag * q.clone();
        j += 1;
    }
    if !mass.is_zero() {
        total = total + block.ln();
    }
    Ok(SeriesValue {
        value: re(total),
        err_bound: mag * c.clone(),
        terms_used: j,
    })
}

fn log_qpoch_cx<T: Real>(
    z: &Cx<T>,
    q: &Cx<T>,
    za: T,
    qa: T,
    c: &T,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let limit = half::<T>();
    let mut total = Cx::<T>::zero();
    let mut block = Cx::<T>::one();
    let mut mass = T::zero();
    let mut w = z.clone();
    let mut mag = za;
    let mut j = 0u64;
    while mag.clone() * c.clone() > cfg.tol {
        if j >= cfg.max_terms {
            return Err(cap_error(j, cfg.max_terms));
        }
        if mass.clone() + mag.clone() > limit && !mass.is_zero() {
            total = total + ln(&block);
            block = Cx::one();
            mass = T::zero();
        }
        if mag > limit {
            total = total + ln_1m(&w);
        } else {
            block = block * (Cx::<T>::one() - w.clone());
            mass = mass + mag.clone();
        }
        w = w * q.clone();
        mag = mag * qa.clone();
        j += 1;
    }
    if !mass.is_zero() {
        total = total + ln(&block);
    }
    Ok(SeriesValue {
        value: total,
        err_bound: mag * c.clone(),
        terms_used: j,
    })
}

/// `(z;q)_∞` for any complex `z`. Factors with `|z q^j| > 1/2` are
/// multiplied directly, the remainder goes through the log series.
pub fn qpoch_inf<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    check_q(q, "qpoch_inf")?;
    let limit = half::<T>();
    let mut prefix = Cx::<T>::one();
    let mut w = z.clone();
    let mut mag = abs(z);
    let mut j = 0u64;
    while mag > limit {
        if j >= cfg.max_terms {
            return Err(cap_error(j, cfg.max_terms));
        }
        prefix = prefix * (Cx::<T>::one() - w.clone());
        w = scale(&w, q);
        mag = mag * q.clone();
        j += 1;
    }
    if prefix.is_zero() {
        return Ok(SeriesValue {
            value: Cx::zero(),
            err_bound: T::zero(),
            terms_used: j,
        });
    }
    let rest = log_qpoch_inf(&w, q, cfg)?.exp()?;
    let value = prefix.clone() * rest.value;
    let err_bound = abs(&prefix) * rest.err_bound;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(QSeriesError::Overflow("qpoch_inf"));
    }
    Ok(SeriesValue {
        value,
        err_bound,
        terms_used: j + rest.terms_used,
    })
}

/// `(z;q)_n = (z;q)_∞ / (z q^n;q)_∞` for complex `n`.
pub fn qpoch_n<T: Real>(
    z: &Cx<T>,
    q: &T,
    n: &Cx<T>,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    check_q(q, "qpoch_n")?;
    let shifted = z.clone() * real_pow(q, n);
    let a = log_qpoch_inf(z, q, cfg)?;
    let b = log_qpoch_inf(&shifted, q, cfg)?;
    SeriesValue {
        value: a.value - b.value,
        err_bound: a.err_bound + b.err_bound,
        terms_used: a.terms_used + b.terms_used,
    }
    .exp()
}

/// `e_q(z) = 1/(z;q)_∞`, `|z| < 1`.
pub fn e_q<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    let l = log_qpoch_inf(z, q, cfg)?;
    SeriesValue {
        value: -l.value,
        ..l
    }
    .exp()
}

/// `E_q(z) = (-z;q)_∞`, any `z`.
pub fn big_e_q<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    qpoch_inf(&-z.clone(), q, cfg)
}

/// Sums `Σ t_n` where `t_{n+1} = t_n · step(n)` and `ratio_bound(N)` bounds
/// `|step(n)|` for all `n ≥ N`; stops once the geometric tail is below `tol`.
fn ratio_series<T: Real>(
    first: Cx<T>,
    mut step: impl FnMut(u64) -> Cx<T>,
    mut ratio_bound: impl FnMut(u64) -> T,
    cfg: &EvalConfig<T>,
    op: &'static str,
) -> Result<SeriesValue<T>> {
    let mut sum = first.clone();
    let mut t = first;
    let mut n = 0u64;
    loop {
        let rho = ratio_bound(n);
        if rho < T::one() {
            let tail = abs(&t) * rho.clone() / (T::one() - rho);
            if tail <= cfg.tol {
                return Ok(SeriesValue {
                    value: sum,
                    err_bound: tail,
                    terms_used: n + 1,
                });
            }
        }
        if n >= cfg.max_terms {
            return Err(QSeriesError::ConvergenceFailure {
                op,
                needed: n,
                max_terms: cfg.max_terms,
            });
        }
        t = t * step(n);
        sum = sum + t.clone();
        n += 1;
    }
}

/// `Σ_n a_n z^n` with `a_{n+1}/a_n = (1 - a q^n)/(1 - q^{n+1})`.
fn binomial_series<T: Real>(
    a: &Cx<T>,
    z: &Cx<T>,
    q: &T,
    cfg: &EvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let za = abs(z);
    let aa = abs(a);
    let mut qn = T::one();
    let mut qn_bound = T::one();
    ratio_series(
        Cx::one(),
        |_| {
            let num = Cx::<T>::one() - scale(a, &qn);
            qn = qn.clone() * q.clone();
            let den = T::one() - qn.clone();
            scale(&(num * z.clone()), &(T::one() / den))
        },
        |_| {
            let r = (T::one() + aa.clone() * qn_bound.clone()) * za.clone()
                / (T::one() - qn_bound.clone() * q.clone());
            qn_bound = qn_bound.clone() * q.clone();
            r
        },
        cfg,
        "q_binomial_series",
    )
}

/// `Σ z^n/(q;q)_n`, the series side of `e_q`.
pub fn e_q_series<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    check_q(q, "e_q_series")?;
    binomial_series(&Cx::zero(), z, q, cfg)
}

/// `Σ q^{n(n-1)/2} z^n/(q;q)_n`, the series side of `E_q`.
pub fn big_e_q_series<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    check_q(q, "big_e_q_series")?;
    let za = abs(z);
    let mut qn = T::one();
    let mut qn_bound = T::one();
    ratio_series(
        Cx::one(),
        |_| {
            let num = scale(z, &qn);
            qn = qn.clone() * q.clone();
            scale(&num, &(T::one() / (T::one() - qn.clone())))
        },
        |_| {
            let r = qn_bound.clone() * za.clone() / (T::one() - q.clone());
            qn_bound = qn_bound.clone() * q.clone();
            r
        },
        cfg,
        "big_e_q_series",
    )
}

fn product_err<T: Real>(a: &SeriesValue<T>, b: &SeriesValue<T>) -> T {
    abs(&a.value) * b.err_bound.clone()
        + abs(&b.value) * a.err_bound.clone()
        + a.err_bound.clone() * b.err_bound.clone()
}

/// Both sides of `(az;q)_∞/(z;q)_∞ = Σ (a;q)_n/(q;q)_n z^n`, `|z| < 1`.
pub fn q_binomial_check<T: Real>(
    a: &Cx<T>,
    z: &Cx<T>,
    q: &T,
    cfg: &EvalConfig<T>,
) -> Result<(SeriesValue<T>, SeriesValue<T>)> {
    let num = qpoch_inf(&(a.clone() * z.clone()), q, cfg)?;
    let inv = e_q(z, q, cfg)?;
    let lhs = SeriesValue {
        value: num.value.clone() * inv.value.clone(),
        err_bound: product_err(&num, &inv),
        terms_used: num.terms_used + inv.terms_used,
    };
    let rhs = binomial_series(a, z, q, cfg)?;
    Ok((lhs, rhs))
}

/// `Γ_q(w) = (q;q)_∞ (1-q)^{1-w} / (q^w;q)_∞`.
pub fn q_gamma<T: Real>(w: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    check_q(q, "q_gamma")?;
    // poles at w = -j + 2πik/ln q
    let lq = q.ln();
    let slack = T::epsilon() * T::lit(64.0) * (T::one() + abs(w));
    let k = w.im.clone() * lq.clone() / (T::lit(2.0) * T::pi());
    let near = |x: &T| (x.clone() - (x.clone() + half()).floor()).abs() <= slack;
    if !w.re.is_positive() && near(&w.re) && near(&k) {
        return Err(QSeriesError::Pole("q_gamma"));
    }
    let qq = log_qpoch_inf(&re(q.clone()), q, cfg)?;
    let den = qpoch_inf(&real_pow(q, w), q, cfg)?;
    let den_abs = abs(&den.value);
    if den_abs <= den.err_bound || den_abs.is_zero() {
        return Err(QSeriesError::Pole("q_gamma"));
    }
    let one_minus = T::one() - q.clone();
    let e = Cx::<T>::one() - w.clone();
    let log_num = qq.value + scale(&e, &one_minus.ln());
    let num = exp(&log_num);
    let value = num / den.value.clone();
    let rel_num = qq.err_bound.exp_m1();
    let rel_den = den.err_bound.clone() / (den_abs - den.err_bound);
    let rel = (T::one() + rel_num) * (T::one() + rel_den) - T::one();
    let err_bound = abs(&value) * rel;
    if !value.re.is_finite() || !value.im.is_finite() || !err_bound.is_finite() {
        return Err(QSeriesError::Overflow("q_gamma"));
    }
    Ok(SeriesValue {
        value,
        err_bound,
        terms_used: qq.terms_used + den.terms_used,
    })
}

/// `Σ_{n∈ℤ} q^{n²/2}(-z)^n`, summed outward from `n = 0` on each side.
fn theta_sum<T: Real>(z: &Cx<T>, q: &T, cfg: &EvalConfig<T>) -> Result<SeriesValue<T>> {
    let sq = q.sqrt();
    let half_cfg = EvalConfig {
        tol: cfg.tol.clone() / T::lit(2.0),
        max_terms: cfg.max_terms,
    };
    let side = |x: Cx<T>| -> Result<SeriesValue<T>> {
        let xa = abs(&x);
        // t_{n+1}/t_n = -x q^{n+1/2}
        let mut qh = sq.clone();
        let mut qh_bound = sq.clone();
        ratio_series(
            Cx::one(),
            |_| {
                let s = -scale(&x, &qh);
                qh = qh.clone() * q.clone();
                s
            },
            |_| {
                let r = qh_bound.clone() * xa.clone();
                qh_bound = qh_bound.clone() * q.clone();
                r
            },
            &half_cfg,
            "triple_product",
        )
    };
    let pos = side(z.clone())?;
    let neg = side(Cx::<T>::one() / z.clone())?;
    Ok(SeriesValue {
        value: pos.value + neg.value - Cx::one(),
        err_bound: pos.err_bound + neg.err_bound,
        terms_used: pos.terms_used + neg.terms_used - 1,
    })
}

fn product3<T: Real>(parts: [SeriesValue<T>; 3]) -> SeriesValue<T> {
    let [a, b, c] = parts;
    let ab = SeriesValue {
        value: a.value.clone() * b.value.clone(),
        err_bound: product_err(&a, &b),
        terms_used: a.terms_used + b.terms_used,
    };
    SeriesValue {
        value: ab.value.clone() * c.value.clone(),
        err_bound: product_err(&ab, &c),
        terms_used: ab.terms_used + c.terms_used,
    }
}

/// Both sides of `Σ q^{n²/2}(-z)^n = (q, q^{1/2}z, q^{1/2}/z; q)_∞`.
pub fn triple_product<T: Real>(
    z: &Cx<T>,
    q: &T,
    cfg: &EvalConfig<T>,
) -> Result<(SeriesValue<T>, SeriesValue<T>)> {
    check_q(q, "triple_product")?;
    if z.is_zero() {
        return Err(QSeriesError::Domain {
            op: "triple_product",
            detail: "z must be nonzero".into(),
        });
    }
    let lhs = theta_sum(z, q, cfg)?;
    let sq = q.sqrt();
    let rhs = product3([
        qpoch_inf(&re(q.clone()), q, cfg)?,
        qpoch_inf(&scale(z, &sq), q, cfg)?,
        qpoch_inf(&scale(&(Cx::<T>::one() / z.clone()), &sq), q, cfg)?,
    ]);
    Ok((lhs, rhs))
}

/// Both sides of the q-Gamma reflection analogue
/// `Σ(-1)^n q^{n²/2+nw} / ((1-q)(q;q)_∞³) = 1/(Γ_q(1/2-w) Γ_q(1/2+w))`.
pub fn q_gamma_reflection<T: Real>(
    w: &Cx<T>,
    q: &T,
    cfg: &EvalConfig<T>,
) -> Result<(SeriesValue<T>, SeriesValue<T>)> {
    check_q(q, "q_gamma_reflection")?;
    let theta = theta_sum(&real_pow(q, w), q, cfg)?;
    let lq = log_qpoch_inf(&re(q.clone()), q, cfg)?;
    let den = SeriesValue {
        value: scale(&lq.value, &T::lit(3.0)) + re((T::one() - q.clone()).ln()),
        err_bound: lq.err_bound.clone() * T::lit(3.0),
        terms_used: lq.terms_used,
    };
    let inv = SeriesValue {
        value: -den.value,
        ..den
    }
    .exp()?;
    let lhs = SeriesValue {
        value: theta.value.clone() * inv.value.clone(),
        err_bound: product_err(&theta, &inv),
        terms_used: theta.terms_used + inv.terms_used,
    };
    let h = re(half::<T>());
    let a = q_gamma(&(h.clone() - w.clone()), q, cfg)?;
    let b = q_gamma(&(h + w.clone()), q, cfg)?;
    let prod = SeriesValue {
        value: a.value.clone() * b.value.clone(),
        err_bound: product_err(&a, &b),
        terms_used: a.terms_used + b.terms_used,
    };
    let pa = abs(&prod.value);
    if pa <= prod.err_bound {
        return Err(QSeriesError::Pole("q_gamma_reflection"));
    }
    let value = Cx::<T>::one() / prod.value;
    let err_bound = prod.err_bound.clone() / (pa.clone() * (pa - prod.err_bound));
    Ok((
        lhs,
        SeriesValue {
            value,
            err_bound,
            terms_used: prod.terms_used,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig<f64> {
        EvalConfig::with_tol(1e-15)
    }

    fn close(a: &SeriesValue<f64>, b: f64, slack: f64) {
        let d = (a.value - Complex::new(b, 0.0)).norm();
        assert!(d <= a.err_bound + slack, "{:?} vs {b}", a.value);
    }

    fn direct(z: f64, q: f64) -> f64 {
        let mut p = 1.0;
        let mut w = z;
        while w.abs() > 1e-18 {
            p *= 1.0 - w;
            w *= q;
        }
        p
    }

    #[test]
    fn log_qpoch_matches_partial_product() {
        assert_eq!(
            log_qpoch_inf(&re(0.0), &0.5, &cfg()).unwrap().value,
            re(0.0)
        );
        let v = log_qpoch_inf(&re(0.5), &0.5, &cfg())
            .unwrap()
            .exp()
            .unwrap();
        close(&v, 0.2887880950866024, 1e-14);
        let c = Complex::new(0.3, 0.6);
        let l = log_qpoch_inf(&c, &0.7, &cfg()).unwrap();
        let mut p = Complex::new(1.0, 0.0);
        let mut w = c;
        for _ in 0..200 {
            p *= Complex::new(1.0, 0.0) - w;
            w *= 0.7;
        }
        assert!((exp(&l.value) - p).norm() < 1e-13);
    }

    #[test]
    fn functional_equation() {
        let a = log_qpoch_inf(&re(0.3), &0.4, &cfg()).unwrap();
        let b = log_qpoch_inf(&re(0.12), &0.4, &cfg()).unwrap();
        assert!((a.value.re - (0.7f64.ln() + b.value.re)).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(log_qpoch_inf(&re(1.0), &0.5, &cfg()).is_err());
        assert!(log_qpoch_inf(&re(0.1), &1.0, &cfg()).is_err());
        assert!(triple_product(&re(0.0), &0.5, &cfg()).is_err());
    }

    #[test]
    fn finite_index() {
        close(
            &qpoch_n(&re(0.3), &0.5, &re(0.0), &cfg()).unwrap(),
            1.0,
            1e-15,
        );
        close(
            &qpoch_n(&re(0.3), &0.5, &re(2.0), &cfg()).unwrap(),
            0.595,
            1e-14,
        );
        let h = qpoch_n(&re(0.3), &0.5, &re(0.5), &cfg()).unwrap();
        let shifted = qpoch_n(&re(0.3 * 0.5f64.sqrt()), &0.5, &re(0.5), &cfg()).unwrap();
        let one = qpoch_n(&re(0.3), &0.5, &re(1.0), &cfg()).unwrap();
        assert!((h.value * shifted.value - one.value).norm() < 1e-14);
    }

    #[test]
    fn exponentials() {
        close(&e_q(&re(0.0), &0.5, &cfg()).unwrap(), 1.0, 0.0);
        close(&big_e_q(&re(0.0), &0.5, &cfg()).unwrap(), 1.0, 0.0);
        let e = e_q(&re(0.2), &0.3, &cfg()).unwrap();
        close(&e, 1.0 / direct(0.2, 0.3), 1e-14);
        let p = e_q(&re(0.4), &0.6, &cfg()).unwrap();
        let s = e_q_series(&re(0.4), &0.6, &cfg()).unwrap();
        assert!((p.value - s.value).norm() <= p.err_bound + s.err_bound + 1e-13);
        let big = big_e_q(&re(3.0), &0.6, &cfg()).unwrap();
        let bs = big_e_q_series(&re(3.0), &0.6, &cfg()).unwrap();
        assert!((big.value - bs.value).norm() <= big.err_bound + bs.err_bound + 1e-12);
        let inv = e_q(&re(-3.0 * 0.6f64.powi(3)), &0.6, &cfg()).unwrap();
        assert!(inv.value.re > 0.0);
    }

    #[test]
    fn binomial_theorem() {
        let (l, r) = q_binomial_check(&re(0.5), &re(0.3), &0.4, &cfg()).unwrap();
        assert!((l.value - r.value).norm() <= l.err_bound + r.err_bound + 1e-14);
        let (l, r) = q_binomial_check(&re(0.4), &re(0.3), &0.4, &cfg()).unwrap();
        close(&l, 1.0 / 0.7, 1e-14);
        close(&r, 1.0 / 0.7, 1e-14);
    }

    #[test]
    fn gamma_values() {
        close(&q_gamma(&re(1.0), &0.5, &cfg()).unwrap(), 1.0, 1e-14);
        close(&q_gamma(&re(2.0), &0.5, &cfg()).unwrap(), 1.0, 1e-14);
        close(&q_gamma(&re(3.0), &0.5, &cfg()).unwrap(), 1.5, 1e-14);
        assert!(matches!(
            q_gamma(&re(-2.0), &0.5, &cfg()),
            Err(QSeriesError::Pole(_))
        ));
    }

    #[test]
    fn theta_identities() {
        let sq = 0.3f64.sqrt();
        let (l, _) = triple_product(&re(sq), &0.3, &cfg()).unwrap();
        assert!(l.value.norm() <= l.err_bound + 1e-15);
        for (z, q) in [(1.0, 0.25), (2.0, 0.3), (0.05, 0.5)] {
            let (l, r) = triple_product(&re(z), &q, &cfg()).unwrap();
            assert!(
                (l.value - r.value).norm() <= l.err_bound + r.err_bound + 1e-13,
                "z={z}"
            );
        }
    }

    #[test]
    fn reflection_analogue() {
        use crate::numerics::Mpf;
        let cfg = EvalConfig::<Mpf>::with_tol(Mpf::lit(1e-30));
        for w in [0.0, 0.2] {
            for q in [0.3, 0.6] {
                let (w, q) = (re(Mpf::lit(w)), Mpf::lit(q));
                let (l, r) = q_gamma_reflection(&w, &q, &cfg).unwrap();
                let gap = abs(&(l.value.clone() - r.value.clone()));
                assert!(gap <= l.err_bound + r.err_bound + Mpf::lit(1e-25));
                // the same sum over (1-q)(q;q)² is larger by the factor 1/(q;q)_∞
                let qq = qpoch_inf(&re(q.clone()), &q, &cfg).unwrap().value.re;
                let printed = l.value.re * qq;
                assert!((printed - r.value.re.clone()).abs() > r.value.re.abs() / Mpf::lit(10.0));
            }
        }
    }
}
