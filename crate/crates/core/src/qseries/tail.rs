//! Tail bounds of the form `Σ_{n>N} n^a r^n`.

use crate::numerics::Real;

use super::{QSeriesError, Result};

/// Upper bound on `Σ_{n>N} n^a r^n` for `0 < r < 1`, or `None` when the
/// ratio bound at `N+1` is not below one yet.
pub fn geometric_poly_tail<T: Real>(a: f64, r: &T, n: u64) -> Option<T> {
    let first = T::from_u64(n + 1).unwrap();
    let lead = first.powf(&T::lit(a)) * r.powf(&first);
    let rho = if a <= 0.0 {
        r.clone()
    } else {
        let grow = (T::from_u64(n + 2).unwrap() / first).powf(&T::lit(a));
        grow * r.clone()
    };
    if rho >= T::one() {
        return None;
    }
    Some(lead / (T::one() - rho))
}

/// Smallest `N` with `c · scale · Σ_{n>N} n^a r^n ≤ tol`, together with that bound.
pub fn terms_for_tail<T: Real>(
    c: f64,
    a: f64,
    r: &T,
    scale: &T,
    tol: &T,
    max_terms: u64,
    op: &'static str,
) -> Result<(u64, T)> {
    if c == 0.0 {
        return Ok((0, T::zero()));
    }
    if !(r.is_positive() && *r < T::one()) {
        return Err(QSeriesError::Domain {
            op,
            detail: format!("tail ratio {r} must lie in (0, 1)"),
        });
    }
    let ln_r = r.ln().approx_f64();
    let ln_k = c.ln() + scale.ln().approx_f64();
    let ln_tol = tol.ln().approx_f64();
    let log_bound = |n: u64| -> f64 {
        let first = (n + 1) as f64;
        let rho_ln = if a <= 0.0 {
            ln_r
        } else {
            a * ((n + 2) as f64 / first).ln() + ln_r
        };
        if rho_ln >= 0.0 {
            return f64::INFINITY;
        }
        ln_k + a * first.ln() + first * ln_r - (-rho_ln.exp_m1()).ln()
    };
    let mut lo = if a > 0.0 {
        (a / -ln_r).ceil() as u64
    } else {
        0
    };
    if log_bound(lo) > ln_tol {
        let mut step = 1u64;
        let mut hi = lo + step;
        while log_bound(hi) > ln_tol {
            lo = hi;
            step = step.saturating_mul(2);
            hi = lo.saturating_add(step);
            if hi > max_terms.saturating_mul(4) {
                return Err(QSeriesError::ConvergenceFailure {
                    op,
                    needed: hi,
                    max_terms,
                });
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if log_bound(mid) > ln_tol {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo = hi;
    }
    let ct = T::lit(c) * scale.clone();
    let mut n = lo;
    loop {
        if n > max_terms {
            return Err(QSeriesError::ConvergenceFailure {
                op,
                needed: n,
                max_terms,
            });
        }
        if let Some(t) = geometric_poly_tail(a, r, n) {
            let bound = ct.clone() * t;
            if bound <= *tol {
                return Ok((n, bound));
            }
        }
        n += n / 64 + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: f64, r: f64, n: u64) -> f64 {
        (n + 1..n + 20_000)
            .map(|k| (k as f64).powf(a) * r.powi(k as i32))
            .sum()
    }

    #[test]
    fn tail_bound_dominates_sum() {
        for &(a, r, n) in &[
            (0.0, 0.5, 3u64),
            (2.0, 0.9, 40),
            (-1.0, 0.99, 10),
            (3.0, 0.7, 20),
        ] {
            let b = geometric_poly_tail(a, &r, n).unwrap();
            let s = brute(a, r, n);
            assert!(b >= s, "a={a} r={r} n={n}: {b} < {s}");
        }
    }

    #[test]
    fn terms_are_minimal() {
        let (n, b) = terms_for_tail(1.0, 1.0, &0.9f64, &1.0, &1e-12, 1_000_000, "t").unwrap();
        assert!(b <= 1e-12);
        let prev = geometric_poly_tail(1.0, &0.9, n - 1).map_or(f64::INFINITY, |t| t);
        assert!(prev > 1e-12);
    }

    #[test]
    fn cap_is_reported() {
        let e = terms_for_tail(1.0, 0.0, &0.999999f64, &1.0, &1e-25, 1000, "t").unwrap_err();
        assert!(matches!(e, QSeriesError::ConvergenceFailure { .. }));
    }
}
