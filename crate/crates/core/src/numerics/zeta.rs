//! Riemann and Hurwitz zeta, ζ′, and Dirichlet β by Euler–Maclaurin summation.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::Real;
use super::NumericsError;

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= m {
        let k = cache.len();
        // sum_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        cache.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    cache[m].clone()
}

pub(crate) fn rational_to<T: Real>(r: &BigRational) -> T {
    let num = T::parse_decimal(&r.numer().to_string()).expect("integer literal");
    let den = T::parse_decimal(&r.denom().to_string()).expect("integer literal");
    num / den
}

/// `B_{2k} / (2k)!` for k = 1..=m, computed lazily so early exits stay cheap.
fn bernoulli_over_factorial<T: Real>(m: usize) -> impl Iterator<Item = T> {
    let mut fact = BigInt::one();
    (1..=m).map(move |k| {
        fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
        let b = bernoulli(2 * k) / BigRational::from_integer(fact.clone());
        rational_to(&b)
    })
}

/// Value with an absolute bound on the discarded Euler–Maclaurin remainder.
#[derive(Clone, Debug)]
pub struct Bounded<T> {
    pub value: T,
    pub err: T,
}

struct Plan {
    n: usize,
    max_k: usize,
}

fn plan<T: Real>(s: &T) -> Plan {
    let bits = T::mantissa_bits() as f64;
    let s = s.approx_f64().abs();
    // the correction terms shrink like ((s + 2k) / (2 pi N))^2 per step
    let n = (0.25 * bits + 2.0 * s + 12.0).ceil() as usize;
    Plan {
        n,
        max_k: (bits as usize) + 40,
    }
}

/// Euler–Maclaurin tail pieces at `A = N + a` for real `s != 1`, excluding the
/// `A^{1-s}/(s-1)` term (callers treat it separately near `s = 1`).
fn em_corrections<T: Real>(
    s: &T,
    big_a: &T,
    max_k: usize,
    target: &T,
) -> Result<Bounded<T>, NumericsError> {
    let coeffs = bernoulli_over_factorial::<T>(max_k);
    let a_pow = big_a.powf(&-s.clone());
    let mut value = a_pow.clone() / T::lit(2.0);
    let inv_a2 = T::one() / (big_a.clone() * big_a.clone());
    let mut rising = s.clone();
    let mut power = a_pow / big_a.clone();
    let mut prev = None::<T>;
    for (k, c) in coeffs.enumerate() {
        let k = k + 1;
        if k > 1 {
            let two_k = T::from_int(2 * k as i128);
            rising = rising
                * (s.clone() + two_k.clone() - T::lit(3.0))
                * (s.clone() + two_k - T::lit(2.0));
            power = power * inv_a2.clone();
        }
        let term = c.clone() * rising.clone() * power.clone();
        let mag = term.abs();
        value = value + term;
        if mag <= *target {
            return Ok(Bounded {
                value,
                err: mag * T::lit(2.0),
            });
        }
        if let Some(p) = &prev {
            if mag > *p {
                break;
            }
        }
        prev = Some(mag);
    }
    Err(NumericsError::NoConvergence("Euler-Maclaurin corrections"))
}

fn power_sum<T: Real>(s: &T, a: &T, n: usize) -> T {
    let neg_s = -s.clone();
    (0..n).fold(T::zero(), |acc, k| {
        acc + (T::from_int(k as i128) + a.clone()).powf(&neg_s)
    })
}

fn target_for<T: Real>(scale: &T) -> T {
    T::epsilon() * scale.abs().max_of(T::one()) / T::lit(64.0)
}

/// Hurwitz zeta `ζ(s, a)` for real `s > 0`, `s != 1`, `a > 0`.
pub fn hurwitz_zeta_bounded<T: Real>(s: &T, a: &T) -> Result<Bounded<T>, NumericsError> {
    if !s.is_positive() || *s == T::one() {
        return Err(NumericsError::Domain {
            op: "hurwitz_zeta",
            detail: format!("s = {s} must be positive and != 1"),
        });
    }
    if !a.is_positive() {
        return Err(NumericsError::Domain {
            op: "hurwitz_zeta",
            detail: format!("a = {a} must be positive"),
        });
    }
    let p = plan(s);
    let big_a = T::from_int(p.n as i128) + a.clone();
    let head = power_sum(s, a, p.n);
    let integral = big_a.powf(&(T::one() - s.clone())) / (s.clone() - T::one());
    let corr = em_corrections(s, &big_a, p.max_k, &target_for(&head))?;
    Ok(Bounded {
        value: head + integral + corr.value,
        err: corr.err,
    })
}

/// Riemann zeta for real `s > 1`.
pub fn zeta<T: Real>(s: &T) -> Result<T, NumericsError> {
    if *s <= T::one() {
        return Err(NumericsError::Domain {
            op: "zeta",
            detail: format!("s = {s} must exceed 1"),
        });
    }
    hurwitz_zeta_bounded(s, &T::one()).map(|b| b.value)
}

/// `ζ′(s)` for real `s > 1`.
pub fn zeta_deriv<T: Real>(s: &T) -> Result<T, NumericsError> {
    if *s <= T::one() {
        return Err(NumericsError::Domain {
            op: "zeta_deriv",
            detail: format!("s = {s} must exceed 1"),
        });
    }
    let p = plan(s);
    let neg_s = -s.clone();
    let mut value = T::zero();
    for k in 2..p.n {
        let x = T::from_int(k as i128);
        value = value - x.ln() * x.powf(&neg_s);
    }
    let big_a = T::from_int(p.n as i128);
    let ln_a = big_a.ln();
    let sm1 = s.clone() - T::one();
    let a_1ms = big_a.powf(&(T::one() - s.clone()));
    value = value - ln_a.clone() * a_1ms.clone() / sm1.clone() - a_1ms / (sm1.clone() * sm1);
    let a_ms = big_a.powf(&neg_s);
    value = value - ln_a.clone() * a_ms.clone() / T::lit(2.0);

    let coeffs = bernoulli_over_factorial::<T>(p.max_k);
    let inv_a2 = T::one() / (big_a.clone() * big_a.clone());
    let mut rising = s.clone();
    let mut log_deriv = T::one() / s.clone();
    let mut power = a_ms / big_a;
    let target = target_for(&value);
    for (k, c) in coeffs.enumerate() {
        let k = k + 1;
        if k > 1 {
            let f1 = s.clone() + T::from_int(2 * k as i128 - 3);
            let f2 = s.clone() + T::from_int(2 * k as i128 - 2);
            log_deriv = log_deriv + T::one() / f1.clone() + T::one() / f2.clone();
            rising = rising * f1 * f2;
            power = power * inv_a2.clone();
        }
        let base = c.clone() * rising.clone() * power.clone();
        let term = base.clone() * (log_deriv.clone() - ln_a.clone());
        value = value + term.clone();
        if term.abs() <= target && base.abs() <= target {
            return Ok(value);
        }
    }
    Err(NumericsError::NoConvergence("zeta_deriv"))
}

/// Dirichlet beta `β(s) = Σ (-1)^n / (2n+1)^s` for real `s > 0`.
pub fn dirichlet_beta<T: Real>(s: &T) -> Result<T, NumericsError> {
    if !s.is_positive() {
        return Err(NumericsError::Domain {
            op: "dirichlet_beta",
            detail: format!("s = {s} must be positive"),
        });
    }
    // β(s) = 4^{-s} (ζ(s, 1/4) - ζ(s, 3/4)); the A^{1-s}/(s-1) pieces are
    // combined so that s = 1 is regular.
    let quarter = T::lit(0.25);
    let three_quarters = T::lit(0.75);
    let p = plan(s);
    let n = T::from_int(p.n as i128);
    let a1 = n.clone() + quarter.clone();
    let a2 = n + three_quarters.clone();
    let head = power_sum(s, &quarter, p.n) - power_sum(s, &three_quarters, p.n);
    let t = T::one() - s.clone();
    let log_ratio = (a1.clone() / a2.clone()).ln();
    let middle = if t.is_zero() {
        -log_ratio
    } else {
        let u = t.clone() * log_ratio;
        -(a2.powf(&t) * u.exp_m1() / t)
    };
    let target = target_for(&head);
    let c1 = em_corrections(s, &a1, p.max_k, &target)?;
    let c2 = em_corrections(s, &a2, p.max_k, &target)?;
    let diff = head + middle + c1.value - c2.value;
    Ok(T::lit(4.0).powf(&-s.clone()) * diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Mpf;

    #[test]
    fn bernoulli_small() {
        let b = |m| bernoulli(m);
        assert_eq!(b(0), BigRational::one());
        assert_eq!(b(1), BigRational::new((-1).into(), 2.into()));
        assert_eq!(b(2), BigRational::new(1.into(), 6.into()));
        assert_eq!(b(3), BigRational::zero());
        assert_eq!(b(12), BigRational::new((-691).into(), 2730.into()));
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z: Mpf = zeta(&Mpf::lit(2.0)).unwrap();
        let pi = Mpf::pi();
        let diff = (z - pi.clone() * pi / Mpf::lit(6.0)).abs();
        assert!(diff < Mpf::lit(1e-36), "{diff}");
    }

    #[test]
    fn zeta_domain() {
        assert!(zeta(&1.0f64).is_err());
        assert!(zeta(&0.5f64).is_err());
    }

    #[test]
    fn beta_at_one_is_quarter_pi() {
        let b: Mpf = dirichlet_beta(&Mpf::one()).unwrap();
        let diff = (b - Mpf::pi() / Mpf::lit(4.0)).abs();
        assert!(diff < Mpf::lit(1e-36), "{diff}");
    }

    #[test]
    fn f64_instantiation() {
        assert!((zeta(&4.0f64).unwrap() - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
        assert!(
            (dirichlet_beta(&3.0f64).unwrap() - std::f64::consts::PI.powi(3) / 32.0).abs() < 1e-14
        );
    }
}
