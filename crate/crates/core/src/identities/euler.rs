//! `Σ_p log F(1/p)` for rational local factors, via prime zeta values.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::arith::Sieve;
use crate::numerics::complex::{abs, ln, scale};
use crate::numerics::{zeta, NumericsError, Real};
use crate::qseries::SeriesValue;

/// Primes below this are summed explicitly.
const P0: u64 = 50;
/// Smallest prime above `P0`.
const P1: f64 = 53.0;

/// `F(y) = N(y)/D(y)` with `N(0) = D(0) = 1`, no linear term in `log F`,
/// and every root of `N` and `D` of modulus at least `1/root_growth`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerFactor<T> {
    pub num: Vec<Complex<T>>,
    pub den: Vec<Complex<T>>,
    pub root_growth: f64,
}

fn poly_eval<T: Real>(c: &[Complex<T>], y: &T) -> Complex<T> {
    c.iter()
        .rev()
        .fold(Complex::zero(), |acc, a| scale(&acc, y) + a.clone())
}

/// Taylor coefficients `b_1..=b_m` of `log a(y)`, `a_0 = 1`.
fn log_series<T: Real>(a: &[Complex<T>], m: usize) -> Vec<Complex<T>> {
    let coef = |k: usize| a.get(k).cloned().unwrap_or_else(Complex::zero);
    let mut b: Vec<Complex<T>> = vec![Complex::zero(); m + 1];
    for k in 1..=m {
        let mut s = Complex::zero();
        for i in 1..k {
            s = s + scale(&(b[i].clone() * coef(k - i)), &T::from_usize(i).unwrap());
        }
        b[k] = coef(k) - scale(&s, &(T::one() / T::from_usize(k).unwrap()));
    }
    b
}

/// `Σ_{p > P0} p^{-t} = Σ_j μ(j)/j · log(ζ(jt) ∏_{p<P0} (1 - p^{-jt}))`
fn prime_zeta_tail<T: Real>(t: u32, small: &[u32]) -> Result<T, NumericsError> {
    let eps = T::epsilon().approx_f64() * 1e-3;
    let mu = |j: u32| -> i32 {
        let (mut n, mut sign, mut p) = (j, 1, 2);
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    };
    let mut sum = T::zero();
    let mut j = 1u32;
    while P1.powf(-((j * t) as f64)) > eps {
        let m = mu(j);
        if m != 0 {
            let s = T::from_u32(j * t).unwrap();
            let mut v = zeta(&s)?;
            for &p in small {
                v = v * (T::one() - T::from_u32(p).unwrap().powf(&-s.clone()));
            }
            sum = sum + v.ln() * T::from_ratio(m as i128, j as i128);
        }
        j += 1;
    }
    Ok(sum)
}

/// `Σ_p log F(1/p)` with a bound on the neglected part of the Taylor expansion.
pub fn euler_product_log<T: Real>(
    factor: &EulerFactor<T>,
) -> Result<SeriesValue<T>, NumericsError> {
    let sieve = Sieve::new(P0 as usize);
    let small: Vec<u32> = sieve.primes().to_vec();
    let mut value = Complex::<T>::zero();
    for &p in &small {
        let y = T::one() / T::from_u32(p).unwrap();
        value = value + ln(&poly_eval(&factor.num, &y)) - ln(&poly_eval(&factor.den, &y));
    }
    // |b_m| ≤ deg · g^m / m, Σ_{p>P0} p^{-m} ≤ P1^{-m} (1 + P1/(m-1))
    let deg = (factor.num.len() + factor.den.len()) as f64;
    let ratio = factor.root_growth / P1;
    if ratio >= 1.0 {
        return Err(NumericsError::Domain {
            op: "euler_product_log",
            detail: format!("root growth {} too large", factor.root_growth),
        });
    }
    let eps = T::epsilon().approx_f64();
    let tail = |m: usize| {
        deg * (1.0 + P1 / m as f64) * ratio.powi(m as i32 + 1) / ((m + 1) as f64 * (1.0 - ratio))
    };
    let mut m_max = 2;
    while tail(m_max) > eps {
        m_max += 1;
    }
    let b: Vec<Complex<T>> = log_series(&factor.num, m_max)
        .into_iter()
        .zip(log_series(&factor.den, m_max))
        .map(|(a, d)| a - d)
        .collect();
    if abs(&b[1]) > T::epsilon() {
        return Err(NumericsError::Domain {
            op: "euler_product_log",
            detail: "log F has a linear term".into(),
        });
    }
    for (m, bm) in b.iter().enumerate().skip(2) {
        if bm.re.is_zero() && bm.im.is_zero() {
            continue;
        }
        value = value + scale(bm, &prime_zeta_tail::<T>(m as u32, &small)?);
    }
    Ok(SeriesValue {
        value,
        err_bound: T::lit(tail(m_max)),
        terms_used: m_max as u64,
    })
}

impl<T: Real> EulerFactor<T> {
    fn real(num: &[i64], den: &[i64], root_growth: f64) -> Self {
        let c = |v: &[i64]| {
            v.iter()
                .map(|&x| Complex::new(T::from_i64(x).unwrap(), T::zero()))
                .collect()
        };
        Self {
            num: c(num),
            den: c(den),
            root_growth,
        }
    }

    /// `Σ (-1)^{ω(n)} / n²`: `F = (1 - 2y²)/(1 - y²)`.
    pub fn neg_one_pow_omega() -> Self {
        Self::real(&[1, 0, -2], &[1, 0, -1], 1.5)
    }

    /// `Σ 1/(n φ(n))`: `F = (1 - y + y³)/(1 - y - y² + y³)`.
    pub fn inv_n_totient() -> Self {
        Self::real(&[1, -1, 0, 1], &[1, -1, -1, 1], 1.5)
    }

    /// `Σ (1 + e^{πi/k})^{ω(n)} / n²`: `F = (1 + e^{πi/k} y²)/(1 - y²)`.
    pub fn root_pow_omega(k: u32) -> Self {
        let w = crate::numerics::complex::cis(&(T::pi() / T::from_u32(k).unwrap()));
        Self {
            num: vec![Complex::one(), Complex::zero(), w],
            den: Self::real(&[], &[1, 0, -1], 1.0).den,
            root_growth: 1.5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_table, FunctionId};
    use crate::numerics::Mpf;

    #[test]
    fn zeta_two_from_primes() {
        let f = EulerFactor::<f64>::real(&[1], &[1, 0, -1], 1.0);
        let v = euler_product_log(&f).unwrap();
        let want = (std::f64::consts::PI.powi(2) / 6.0).ln();
        assert!((v.value.re - want).abs() < 1e-14);
    }

    #[test]
    fn constants_match_direct_sums() {
        let n = 200_000;
        let omega = build_table::<f64>(&FunctionId::Omega, n)
            .unwrap()
            .integers()
            .unwrap();
        let direct: f64 = omega
            .iter()
            .enumerate()
            .map(|(i, &w)| if w % 2 == 0 { 1.0 } else { -1.0 } / ((i + 1) as f64).powi(2))
            .sum();
        let v = euler_product_log(&EulerFactor::<f64>::neg_one_pow_omega()).unwrap();
        assert!((v.value.re.exp() - direct).abs() < 1e-5);

        let phi = build_table::<f64>(&FunctionId::Totient, n)
            .unwrap()
            .integers()
            .unwrap();
        let direct: f64 = phi
            .iter()
            .enumerate()
            .map(|(i, &p)| 1.0 / ((i + 1) as f64 * p as f64))
            .sum();
        let v = euler_product_log(&EulerFactor::<f64>::inv_n_totient()).unwrap();
        // tail Σ_{n>N} 1/(nφ(n)) is O(log log N / N)
        assert!((v.value.re.exp() - direct).abs() < 5e-5);
        assert!((v.value.re.exp() - direct) > 0.0);
    }

    #[test]
    fn root_factor_at_k1_collapses() {
        // 1 + e^{πi} = 0, so only n = 1 survives
        let v = euler_product_log(&EulerFactor::<Mpf>::root_pow_omega(1)).unwrap();
        assert!(v.value.re.abs().approx_f64() < 1e-30);
        assert!(v.value.im.abs().approx_f64() < 1e-30);
    }
}
