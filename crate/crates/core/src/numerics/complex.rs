//! Elementary functions on `num_complex::Complex<T>` for any [`Real`] `T`.
//!
//! `num_complex` only provides these for `T: Float`, which the MPFR scalar
//! cannot implement (it is not `Copy`).

use num_complex::Complex;
use num_traits::{One, Zero};

use super::real::Real;

pub type Cx<T> = Complex<T>;

pub fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

pub fn abs<T: Real>(z: &Cx<T>) -> T {
    if z.im.is_zero() {
        return z.re.abs();
    }
    if z.re.is_zero() {
        return z.im.abs();
    }
    z.norm_sqr().sqrt()
}

pub fn exp<T: Real>(z: &Cx<T>) -> Cx<T> {
    let m = z.re.exp();
    if z.im.is_zero() {
        return re(m);
    }
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

/// Principal logarithm.
pub fn ln<T: Real>(z: &Cx<T>) -> Cx<T> {
    if z.im.is_zero() && z.re.is_positive() {
        return re(z.re.ln());
    }
    Complex::new(abs(z).ln(), z.im.atan2(&z.re))
}

/// Principal `ln(1 - u)`, accurate for small `|u|`.
pub fn ln_1m<T: Real>(u: &Cx<T>) -> Cx<T> {
    if u.im.is_zero() && u.re < T::one() {
        return re((-u.re.clone()).ln_1p());
    }
    // |1-u|^2 - 1 = -2 Re u + |u|^2
    let t = u.norm_sqr() - T::lit(2.0) * u.re.clone();
    let modulus = t.ln_1p() / T::lit(2.0);
    let arg = (-u.im.clone()).atan2(&(T::one() - u.re.clone()));
    Complex::new(modulus, arg)
}

/// `base^e` for a positive real base, via `exp(e ln base)`.
pub fn real_pow<T: Real>(base: &T, e: &Cx<T>) -> Cx<T> {
    let l = base.ln();
    exp(&Complex::new(e.re.clone() * l.clone(), e.im.clone() * l))
}

pub fn powi<T: Real>(z: &Cx<T>, n: u64) -> Cx<T> {
    let mut acc = Complex::one();
    let mut base = z.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        k >>= 1;
    }
    acc
}

pub fn scale<T: Real>(z: &Cx<T>, s: &T) -> Cx<T> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}

pub fn is_finite<T: Real>(z: &Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `exp(i theta)`.
pub fn cis<T: Real>(theta: &T) -> Cx<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn zero<T: Real>() -> Cx<T> {
    Complex::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_inverts_exp() {
        let z = Complex::new(0.3f64, -1.2);
        let w = ln(&exp(&z));
        assert!((w - z).norm() < 1e-15);
    }

    #[test]
    fn ln_1m_small_argument() {
        let u = Complex::new(1e-20f64, 1e-20);
        let v = ln_1m(&u);
        assert!((v.re + 1e-20).abs() < 1e-34);
        assert!((v.im + 1e-20).abs() < 1e-34);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let z = Complex::new(0.7f64, 0.2);
        let mut p = Complex::one();
        for _ in 0..13 {
            p *= z;
        }
        assert!((powi(&z, 13) - p).norm() < 1e-15);
    }
}
