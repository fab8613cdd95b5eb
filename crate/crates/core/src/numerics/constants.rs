//! Euler's γ, Catalan's G and Glaisher's A.

use super::real::Real;
use super::zeta::{bernoulli, rational_to, zeta, zeta_deriv};

/// Euler–Mascheroni constant from the Euler–Maclaurin expansion of `H_n`.
pub fn euler_gamma<T: Real>() -> T {
    let bits = T::mantissa_bits() as usize;
    // the asymptotic series bottoms out near e^{-2 pi n}
    let n = (bits / 6).max(10);
    let n_t = T::from_int(n as i128);
    let harmonic = (1..=n)
        .rev()
        .fold(T::zero(), |acc, k| acc + T::one() / T::from_int(k as i128));
    let mut value = harmonic - n_t.ln() - T::one() / (T::lit(2.0) * n_t.clone());
    let target = T::epsilon() / T::lit(64.0);
    let n2 = n_t.clone() * n_t;
    let mut power = n2.clone();
    for k in 1..=bits {
        let b: T = rational_to(&bernoulli(2 * k));
        let term = b / (T::from_int(2 * k as i128) * power.clone());
        value = value + term.clone();
        if term.abs() < target {
            break;
        }
        power = power * n2.clone();
    }
    value
}

/// Catalan's constant by Ramanujan's accelerated series
/// `G = (π/8) ln(2+√3) + (3/8) Σ (n!)² / ((2n)! (2n+1)²)`.
pub fn catalan<T: Real>() -> T {
    let target = T::epsilon() / T::lit(64.0);
    let mut a = T::one();
    let mut sum = T::zero();
    let mut n: i128 = 0;
    loop {
        let odd = T::from_int(2 * n + 1);
        let term = a.clone() / (odd.clone() * odd.clone());
        sum = sum + term.clone();
        // ratio of successive terms is below 1/4, so the tail is under term/3
        if term < target {
            break;
        }
        a = a * T::from_int(n + 1) / (T::lit(2.0) * odd);
        n += 1;
    }
    let three = T::lit(3.0);
    T::pi() / T::lit(8.0) * (T::lit(2.0) + three.sqrt()).ln() + three / T::lit(8.0) * sum
}

/// `ζ′(−1)` from the convergent series `ζ′(2) = −Σ ln n / n²` and the functional equation.
pub fn zeta_prime_minus_one<T: Real>() -> T {
    let two = T::lit(2.0);
    let pi = T::pi();
    let zp2 = zeta_deriv(&two).expect("s = 2 is in the domain");
    (T::one() - euler_gamma::<T>() - (two.clone() * pi.clone()).ln()) / T::lit(12.0)
        + zp2 / (two * pi.clone() * pi)
}

/// Glaisher–Kinkelin constant, `ln A = 1/12 − ζ′(−1)`.
pub fn glaisher<T: Real>() -> T {
    (T::one() / T::lit(12.0) - zeta_prime_minus_one::<T>()).exp()
}

/// `ζ(2)` as `π²/6`, used often enough by limit targets to deserve a name.
pub fn zeta2<T: Real>() -> T {
    let pi = T::pi();
    pi.clone() * pi / T::lit(6.0)
}

/// Convenience: `ζ(s)` for `s > 1` given as an `f64` literal.
pub fn zeta_at<T: Real>(s: f64) -> T {
    zeta(&T::lit(s)).expect("s > 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Mpf;

    fn close(a: Mpf, digits: &str, tol: f64) {
        let b = Mpf::parse_decimal(digits).unwrap();
        assert!((a.clone() - b).abs() < Mpf::lit(tol), "{a} vs {digits}");
    }

    #[test]
    fn gamma_digits() {
        close(
            euler_gamma(),
            "0.57721566490153286060651209008240243104215933593992",
            1e-37,
        );
    }

    #[test]
    fn catalan_digits() {
        close(
            catalan(),
            "0.91596559417721901505460351493238411077414937428167",
            1e-37,
        );
    }

    #[test]
    fn glaisher_digits() {
        close(
            glaisher(),
            "1.28242712910062263687534256886979172776768892732500",
            1e-36,
        );
    }

    #[test]
    fn f64_constants() {
        assert!((euler_gamma::<f64>() - 0.5772156649015329).abs() < 1e-15);
        assert!((catalan::<f64>() - 0.915965594177219).abs() < 1e-15);
        assert!((glaisher::<f64>() - 1.2824271291006226).abs() < 1e-14);
    }
}
