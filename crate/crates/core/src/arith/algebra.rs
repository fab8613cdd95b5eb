//! Dirichlet convolution, Möbius inversion and the gcd-sum transforms.

use num_complex::Complex;
use num_integer::gcd;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use super::function::FunctionId;
use super::sieve::Sieve;
use super::table::{build_table, overflow, ArithTable, ArithValue, Growth, Q};
use super::ArithError;
use crate::numerics::Real;

fn same_len<T: Real>(a: &ArithTable<T>, b: &ArithTable<T>) -> Result<usize, ArithError> {
    if a.len() != b.len() {
        return Err(ArithError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.len())
}

fn convolve_exact(a: &[Q], b: &[Q], label: &str) -> Result<Vec<Q>, ArithError> {
    let n = a.len();
    let mut out = vec![Q::zero(); n];
    for d in 1..=n {
        if a[d - 1].is_zero() {
            continue;
        }
        for k in 1..=n / d {
            let m = d * k;
            out[m - 1] = a[d - 1]
                .checked_mul(&b[k - 1])
                .and_then(|x| out[m - 1].checked_add(&x))
                .ok_or_else(|| overflow(label, m))?;
        }
    }
    Ok(out)
}

fn convolve_complex<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = a.len();
    let mut out = vec![Complex::<T>::zero(); n];
    for d in 1..=n {
        let x = &a[d - 1];
        if x.re.is_zero() && x.im.is_zero() {
            continue;
        }
        for k in 1..=n / d {
            out[d * k - 1] = out[d * k - 1].clone() + x.clone() * b[k - 1].clone();
        }
    }
    out
}

fn exact_table<T: Real>(label: String, vals: Vec<Q>, growth: Growth) -> ArithTable<T> {
    if vals.iter().all(|q| q.is_integer()) {
        ArithTable::from_integers(
            FunctionId::Custom(label),
            vals.iter().map(|q| *q.numer()).collect(),
            growth,
        )
    } else {
        ArithTable::from_rationals(FunctionId::Custom(label), vals, growth)
    }
}

/// `(a * b)(n) = Σ_{d|n} a(d) b(n/d)`; exact when both inputs are.
pub fn dirichlet_convolve<T: Real>(
    a: &ArithTable<T>,
    b: &ArithTable<T>,
) -> Result<ArithTable<T>, ArithError> {
    same_len(a, b)?;
    let label = format!("({})*({})", a.fid, b.fid);
    let growth = Growth::convolution(a.growth, b.growth);
    match (a.rationals(), b.rationals()) {
        (Some(x), Some(y)) => Ok(exact_table(
            label.clone(),
            convolve_exact(&x, &y, &label)?,
            growth,
        )),
        _ => Ok(ArithTable::from_complex(
            FunctionId::Custom(label),
            convolve_complex(&a.complex_values(), &b.complex_values()),
            growth,
        )),
    }
}

/// The `g` with `f = 1 * g`, i.e. `g = μ * f`.
pub fn mobius_invert<T: Real>(f: &ArithTable<T>) -> Result<ArithTable<T>, ArithError> {
    let mu = build_table::<T>(&FunctionId::Mobius, f.len())?;
    let g = dirichlet_convolve(&mu, f)?;
    Ok(g.with_fid(FunctionId::Custom(format!("mobius_invert({})", f.fid))))
}

/// `h(n) = (1/n) Σ_{d|n} d f(d) μ(n/d)`.
pub fn h_transform<T: Real>(f: &ArithTable<T>) -> Result<ArithTable<T>, ArithError> {
    let n = f.len();
    let label = format!("h({})", f.fid);
    let mu = build_table::<T>(&FunctionId::Mobius, n)?
        .integers()
        .expect("integer table");
    // |n h(n)| ≤ C d(n) n^{max(1+β,0)} with d(n) ≤ 2√n
    let growth = Growth::new(2.0 * f.growth.c, (1.0 + f.growth.beta).max(0.0) - 0.5);
    if let Some(vals) = f.rationals() {
        let mut acc = vec![Q::zero(); n];
        for d in 1..=n {
            let df = vals[d - 1]
                .checked_mul(&Q::from_integer(d as i128))
                .ok_or_else(|| overflow(&label, d))?;
            if df.is_zero() {
                continue;
            }
            for k in 1..=n / d {
                let m = d * k;
                let term = df
                    .checked_mul(&Q::from_integer(mu[k - 1]))
                    .ok_or_else(|| overflow(&label, m))?;
                acc[m - 1] = acc[m - 1]
                    .checked_add(&term)
                    .ok_or_else(|| overflow(&label, m))?;
            }
        }
        let out = acc
            .into_iter()
            .enumerate()
            .map(|(i, x)| x / Q::from_integer(i as i128 + 1))
            .collect();
        return Ok(exact_table(label, out, growth));
    }
    let vals = f.complex_values();
    let mut acc = vec![Complex::<T>::zero(); n];
    for d in 1..=n {
        let dt = T::from_int(d as i128);
        let df = Complex::new(
            vals[d - 1].re.clone() * dt.clone(),
            vals[d - 1].im.clone() * dt,
        );
        for k in 1..=n / d {
            match mu[k - 1] {
                1 => acc[d * k - 1] = acc[d * k - 1].clone() + df.clone(),
                -1 => acc[d * k - 1] = acc[d * k - 1].clone() - df.clone(),
                _ => {}
            }
        }
    }
    let out = acc
        .into_iter()
        .enumerate()
        .map(|(i, z)| {
            let m = T::from_int(i as i128 + 1);
            Complex::new(z.re / m.clone(), z.im / m)
        })
        .collect();
    Ok(ArithTable::from_complex(
        FunctionId::Custom(label),
        out,
        growth,
    ))
}

/// `Σ_{k=1}^{n} gcd(n,k) g(gcd(n,k))`, summed literally over `k`.
pub fn gcd_sum_transform<T: Real>(g: &ArithTable<T>, n: u64) -> Result<ArithValue<T>, ArithError> {
    if n == 0 || n as usize > g.len() {
        return Err(ArithError::OutOfRange { n, len: g.len() });
    }
    let label = format!("gcd_sum({})", g.fid);
    if let Some(vals) = g.rationals() {
        let mut acc = Q::zero();
        for k in 1..=n {
            let c = gcd(n, k);
            let term = vals[c as usize - 1]
                .checked_mul(&Q::from_integer(c as i128))
                .ok_or_else(|| overflow(&label, n as usize))?;
            acc = acc
                .checked_add(&term)
                .ok_or_else(|| overflow(&label, n as usize))?;
        }
        return Ok(if acc.is_integer() {
            ArithValue::Integer(*acc.numer())
        } else {
            ArithValue::Rational(acc)
        });
    }
    let vals = g.complex_values();
    let mut acc = Complex::<T>::zero();
    for k in 1..=n {
        let c = gcd(n, k);
        let ct = T::from_int(c as i128);
        let v = &vals[c as usize - 1];
        acc = acc + Complex::new(v.re.clone() * ct.clone(), v.im.clone() * ct);
    }
    Ok(ArithValue::Complex(acc))
}

/// `n ↦ (1/n) Σ_{k=1}^{n} gcd(n,k) g(gcd(n,k))` on the whole range (quadratic cost).
pub fn gcd_sum_table<T: Real>(g: &ArithTable<T>) -> Result<ArithTable<T>, ArithError> {
    let label = format!("gcd_sum({})/n", g.fid);
    // each summand is at most max_{d|n} d·C·d^β ≤ C n^{1+max(β,0)}
    let growth = Growth::new(g.growth.c, 1.0 + g.growth.beta.max(0.0));
    let n = g.len();
    if g.is_exact() {
        let mut out = Vec::with_capacity(n);
        for m in 1..=n as u64 {
            let v = gcd_sum_transform(g, m)?.as_rational().expect("exact input");
            out.push(v / Q::from_integer(m as i128));
        }
        return Ok(exact_table(label, out, growth));
    }
    let mut out = Vec::with_capacity(n);
    for m in 1..=n as u64 {
        let v = gcd_sum_transform(g, m)?.to_complex();
        let mt = T::from_int(m as i128);
        out.push(Complex::new(v.re / mt.clone(), v.im / mt));
    }
    Ok(ArithTable::from_complex(
        FunctionId::Custom(label),
        out,
        growth,
    ))
}

/// For multiplicative `f`: `(∏_{p|n} (1 - f(p)), Σ_{d|n} μ(d) f(d))`.
pub fn squarefree_kernel_sum<T: Real>(
    f: &ArithTable<T>,
    n: u64,
) -> Result<(ArithValue<T>, ArithValue<T>), ArithError> {
    if n == 0 || n as usize > f.len() {
        return Err(ArithError::OutOfRange { n, len: f.len() });
    }
    let sieve = Sieve::new(n as usize);
    let primes: Vec<u64> = sieve.factorize(n).into_iter().map(|(p, _)| p).collect();
    let label = format!("kernel({})", f.fid);
    let squarefree_divisors = (0u32..1 << primes.len()).map(|mask| {
        let (d, sign) = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold((1u64, 1i128), |(d, s), (_, &p)| (d * p, -s));
        (d, sign)
    });
    if let Some(vals) = f.rationals() {
        let mut prod = Q::one();
        for &p in &primes {
            let factor = Q::one()
                .checked_sub(&vals[p as usize - 1])
                .ok_or_else(|| overflow(&label, n as usize))?;
            prod = prod
                .checked_mul(&factor)
                .ok_or_else(|| overflow(&label, n as usize))?;
        }
        let mut sum = Q::zero();
        for (d, sign) in squarefree_divisors {
            let term = vals[d as usize - 1] * Q::from_integer(sign);
            sum = sum
                .checked_add(&term)
                .ok_or_else(|| overflow(&label, n as usize))?;
        }
        return Ok((ArithValue::Rational(prod), ArithValue::Rational(sum)));
    }
    let vals = f.complex_values();
    let prod = primes.iter().fold(Complex::<T>::one(), |acc, &p| {
        acc * (Complex::<T>::one() - vals[p as usize - 1].clone())
    });
    let sum = squarefree_divisors.fold(Complex::<T>::zero(), |acc, (d, sign)| {
        let v = vals[d as usize - 1].clone();
        if sign > 0 {
            acc + v
        } else {
            acc - v
        }
    });
    Ok((ArithValue::Complex(prod), ArithValue::Complex(sum)))
}

/// `n ↦ ∏_{p|n} (1 - f(p))` on the whole range. No bound follows from `f`'s own
/// certificate in general, so the caller supplies one.
pub fn kernel_product_table<T: Real>(
    f: &ArithTable<T>,
    growth: Growth,
) -> Result<ArithTable<T>, ArithError> {
    let n = f.len();
    let sieve = Sieve::new(n);
    let label = format!("kernel({})", f.fid);
    if let Some(vals) = f.rationals() {
        let mut out = Vec::with_capacity(n);
        for m in 1..=n as u64 {
            let mut prod = Q::one();
            for (p, _) in sieve.factorize(m) {
                prod = Q::one()
                    .checked_sub(&vals[p as usize - 1])
                    .and_then(|x| prod.checked_mul(&x))
                    .ok_or_else(|| overflow(&label, m as usize))?;
            }
            out.push(prod);
        }
        return Ok(exact_table(label, out, growth));
    }
    let vals = f.complex_values();
    let out = (1..=n as u64)
        .map(|m| {
            sieve
                .factorize(m)
                .into_iter()
                .fold(Complex::<T>::one(), |acc, (p, _)| {
                    acc * (Complex::<T>::one() - vals[p as usize - 1].clone())
                })
        })
        .collect();
    Ok(ArithTable::from_complex(
        FunctionId::Custom(label),
        out,
        growth,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str, n: usize) -> ArithTable<f64> {
        build_table(&s.parse().unwrap(), n).unwrap()
    }

    fn identity(n: usize) -> ArithTable<f64> {
        table("one", n).scaled_pow(Q::one(), 1.0).unwrap()
    }

    #[test]
    fn mobius_times_one_is_unit() {
        let c = dirichlet_convolve(&table("mobius", 50), &table("one", 50)).unwrap();
        let v = c.integers().unwrap();
        assert_eq!(v[0], 1);
        assert!(v[1..].iter().all(|&x| x == 0));
    }

    #[test]
    fn one_times_one_is_divisor_count() {
        let c = dirichlet_convolve(&table("one", 60), &table("one", 60)).unwrap();
        assert_eq!(c.integers(), table("divisor_d", 60).integers());
    }

    #[test]
    fn totient_sums_to_n() {
        let c = dirichlet_convolve(&table("totient", 80), &table("one", 80)).unwrap();
        assert_eq!(c.integers().unwrap(), (1..=80).collect::<Vec<i128>>());
    }

    #[test]
    fn inversions() {
        let id = identity(100);
        assert_eq!(
            mobius_invert(&id).unwrap().integers(),
            table("totient", 100).integers()
        );
        let d = table("divisor_d", 100);
        assert_eq!(
            mobius_invert(&d).unwrap().integers(),
            table("one", 100).integers()
        );
        let n3 = table("one", 100).scaled_pow(Q::one(), 3.0).unwrap();
        assert_eq!(
            mobius_invert(&n3).unwrap().integers(),
            table("jordan:3", 100).integers()
        );
    }

    #[test]
    fn h_transform_examples() {
        let h = h_transform(&table("divisor_d", 12)).unwrap();
        assert_eq!(h.get(4).unwrap().as_rational(), Some(Q::from_integer(2)));
        let id = identity(12);
        assert_eq!(
            h_transform(&id).unwrap().get(1).unwrap().as_rational(),
            Some(Q::one())
        );
    }

    #[test]
    fn gcd_sums() {
        let one = table("one", 10);
        assert_eq!(gcd_sum_transform(&one, 1).unwrap(), ArithValue::Integer(1));
        assert_eq!(gcd_sum_transform(&one, 6).unwrap(), ArithValue::Integer(15));
        let j1 = table("jordan:1", 50);
        let j2 = table("jordan:2", 50).integers().unwrap();
        for n in 1..=50 {
            assert_eq!(
                gcd_sum_transform(&j1, n).unwrap(),
                ArithValue::Integer(j2[n as usize - 1])
            );
        }
    }

    #[test]
    fn kernel_sums() {
        let inv = table("one", 12).scaled_pow(Q::one(), -1.0).unwrap();
        let (p, s) = squarefree_kernel_sum(&inv, 12).unwrap();
        assert_eq!(p, ArithValue::Rational(Q::new(1, 3)));
        assert_eq!(s, p);
        let id = identity(6);
        let (p, s) = squarefree_kernel_sum(&id, 6).unwrap();
        assert_eq!(p, ArithValue::Rational(Q::from_integer(2)));
        assert_eq!(s, p);
        let (p, _) = squarefree_kernel_sum(&id, 1).unwrap();
        assert_eq!(p, ArithValue::Rational(Q::one()));
    }
}
