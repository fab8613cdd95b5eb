//! Tabulated arithmetic functions on `1..=N`.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::function::{is_int, FunctionId};
use super::sieve::Sieve;
use super::ArithError;
use crate::numerics::complex::{cis, re};
use crate::numerics::Real;

pub type Q = Ratio<i128>;

/// Certified bound `|f(n)| ≤ c · n^beta` for every `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub c: f64,
    pub beta: f64,
}

impl Growth {
    pub const fn new(c: f64, beta: f64) -> Self {
        Self { c, beta }
    }

    /// Bound for a Dirichlet convolution, using `d(n) ≤ 2√n`.
    pub fn convolution(a: Growth, b: Growth) -> Growth {
        Growth::new(2.0 * a.c * b.c, a.beta.max(b.beta).max(0.0) + 0.5)
    }

    pub fn product(a: Growth, b: Growth) -> Growth {
        Growth::new(a.c * b.c, a.beta + b.beta)
    }

    /// Bound for `n ↦ n^e f(n)`.
    pub fn shifted(self, e: f64) -> Growth {
        Growth::new(self.c, self.beta + e)
    }

    pub fn scaled(self, s: f64) -> Growth {
        Growth::new(self.c * s.abs(), self.beta)
    }

    pub fn holds_at(&self, n: u64, magnitude: f64) -> bool {
        magnitude <= self.c * (n as f64).powf(self.beta) * (1.0 + 1e-12)
    }
}

/// One entry of a table.
#[derive(Clone, Debug, PartialEq)]
pub enum ArithValue<T> {
    Integer(i128),
    Rational(Q),
    Complex(Complex<T>),
}

pub(crate) fn q_to_real<T: Real>(q: &Q) -> T {
    T::from_int(*q.numer()) / T::from_int(*q.denom())
}

impl<T: Real> ArithValue<T> {
    pub fn to_complex(&self) -> Complex<T> {
        match self {
            ArithValue::Integer(v) => re(T::from_int(*v)),
            ArithValue::Rational(q) => re(q_to_real(q)),
            ArithValue::Complex(z) => z.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ArithValue::Integer(v) => *v == 0,
            ArithValue::Rational(q) => q.is_zero(),
            ArithValue::Complex(z) => z.re.is_zero() && z.im.is_zero(),
        }
    }

    pub fn magnitude_f64(&self) -> f64 {
        match self {
            ArithValue::Integer(v) => v.unsigned_abs() as f64,
            ArithValue::Rational(q) => q.abs().to_f64().unwrap_or(f64::INFINITY),
            ArithValue::Complex(z) => z.re.approx_f64().hypot(z.im.approx_f64()),
        }
    }

    /// Exact rational view, if the value is exact.
    pub fn as_rational(&self) -> Option<Q> {
        match self {
            ArithValue::Integer(v) => Some(Q::from_integer(*v)),
            ArithValue::Rational(q) => Some(*q),
            ArithValue::Complex(_) => None,
        }
    }
}

impl<T: Real> fmt::Display for ArithValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithValue::Integer(v) => write!(f, "{v}"),
            ArithValue::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ArithValue::Complex(z) => {
                if z.im.is_zero() {
                    f.write_str(&z.re.to_decimal())
                } else {
                    let sign = if z.im.is_negative() { "-" } else { "+" };
                    write!(
                        f,
                        "{}{}{}i",
                        z.re.to_decimal(),
                        sign,
                        z.im.abs().to_decimal()
                    )
                }
            }
        }
    }
}

/// Entries for `n = 1..=N`, stored at index `n - 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum TableValues<T> {
    Integer(Vec<i128>),
    Rational(Vec<Q>),
    Complex(Vec<Complex<T>>),
}

impl<T: Real> TableValues<T> {
    pub fn len(&self) -> usize {
        match self {
            TableValues::Integer(v) => v.len(),
            TableValues::Rational(v) => v.len(),
            TableValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Values of one arithmetic function on `1..=N` with a growth certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithTable<T> {
    pub fid: FunctionId,
    pub values: TableValues<T>,
    pub growth: Growth,
    /// For the von Mangoldt table: the prime `p` when `n = p^m`, else 0.
    pub mangoldt_primes: Option<Vec<u64>>,
}

impl<T: Real> ArithTable<T> {
    pub fn from_integers(fid: FunctionId, values: Vec<i128>, growth: Growth) -> Self {
        Self::new(fid, TableValues::Integer(values), growth)
    }

    pub fn from_rationals(fid: FunctionId, values: Vec<Q>, growth: Growth) -> Self {
        Self::new(fid, TableValues::Rational(values), growth)
    }

    pub fn from_complex(fid: FunctionId, values: Vec<Complex<T>>, growth: Growth) -> Self {
        Self::new(fid, TableValues::Complex(values), growth)
    }

    /// Tabulate `f(1..=n)` for an arbitrary closure.
    pub fn from_fn(label: &str, n: usize, growth: Growth, f: impl Fn(u64) -> Complex<T>) -> Self {
        Self::from_complex(
            FunctionId::Custom(label.to_string()),
            (1..=n as u64).map(f).collect(),
            growth,
        )
    }

    fn new(fid: FunctionId, values: TableValues<T>, growth: Growth) -> Self {
        Self {
            fid,
            values,
            growth,
            mangoldt_primes: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.values, TableValues::Complex(_))
    }

    pub fn get(&self, n: u64) -> Result<ArithValue<T>, ArithError> {
        if n == 0 || n as usize > self.len() {
            return Err(ArithError::OutOfRange { n, len: self.len() });
        }
        let i = n as usize - 1;
        Ok(match &self.values {
            TableValues::Integer(v) => ArithValue::Integer(v[i]),
            TableValues::Rational(v) => ArithValue::Rational(v[i]),
            TableValues::Complex(v) => ArithValue::Complex(v[i].clone()),
        })
    }

    /// Integer view, if every entry is an integer.
    pub fn integers(&self) -> Option<Vec<i128>> {
        match &self.values {
            TableValues::Integer(v) => Some(v.clone()),
            TableValues::Rational(v) => v
                .iter()
                .map(|q| q.is_integer().then(|| *q.numer()))
                .collect(),
            TableValues::Complex(_) => None,
        }
    }

    /// Exact view, if the table is exact.
    pub fn rationals(&self) -> Option<Vec<Q>> {
        match &self.values {
            TableValues::Integer(v) => Some(v.iter().map(|&x| Q::from_integer(x)).collect()),
            TableValues::Rational(v) => Some(v.clone()),
            TableValues::Complex(_) => None,
        }
    }

    /// All entries converted to the working precision.
    pub fn complex_values(&self) -> Vec<Complex<T>> {
        match &self.values {
            TableValues::Integer(v) => v.iter().map(|&x| re(T::from_int(x))).collect(),
            TableValues::Rational(v) => v.iter().map(q_to_real).map(re).collect(),
            TableValues::Complex(v) => v.clone(),
        }
    }

    pub fn with_fid(mut self, fid: FunctionId) -> Self {
        self.fid = fid;
        self
    }

    pub fn with_growth(mut self, growth: Growth) -> Self {
        self.growth = growth;
        self
    }

    pub fn label(&self) -> String {
        self.fid.to_string()
    }

    /// First `n` at which the growth certificate fails, if any.
    pub fn growth_violation(&self) -> Option<u64> {
        (1..=self.len() as u64).find(|&n| {
            !self
                .growth
                .holds_at(n, self.get(n).unwrap().magnitude_f64())
        })
    }

    /// The first `n` entries.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.len());
        let values = match &self.values {
            TableValues::Integer(v) => TableValues::Integer(v[..n].to_vec()),
            TableValues::Rational(v) => TableValues::Rational(v[..n].to_vec()),
            TableValues::Complex(v) => TableValues::Complex(v[..n].to_vec()),
        };
        Self {
            fid: self.fid.clone(),
            values,
            growth: self.growth,
            mangoldt_primes: self.mangoldt_primes.as_ref().map(|p| p[..n].to_vec()),
        }
    }

    /// `n ↦ c · n^e · f(n)` for rational `c`, exact when possible.
    pub fn scaled_pow(&self, c: Q, e: f64) -> Result<Self, ArithError> {
        let label = format!("{}*n^{}*{}", c, e, self.fid);
        let growth = self
            .growth
            .shifted(e)
            .scaled(c.to_f64().unwrap_or(f64::INFINITY));
        if is_int(e) {
            if let Some(vals) = self.rationals() {
                let e = e as i32;
                let mut out = Vec::with_capacity(vals.len());
                for (i, v) in vals.iter().enumerate() {
                    let n = (i + 1) as i128;
                    let pow = checked_pow_i128(n, e.unsigned_abs()).map(|p| {
                        if e >= 0 {
                            Q::from_integer(p)
                        } else {
                            Q::new(1, p)
                        }
                    });
                    let r = pow
                        .and_then(|p| p.checked_mul(v))
                        .and_then(|x| x.checked_mul(&c));
                    out.push(r.ok_or_else(|| overflow(&label, i + 1))?);
                }
                return Ok(
                    Self::from_rationals(FunctionId::Custom(label), out, growth).normalized()
                );
            }
        }
        let c_t: T = q_to_real(&c);
        let e_t = T::lit(e);
        let vals = self
            .complex_values()
            .into_iter()
            .enumerate()
            .map(|(i, z)| {
                let s = T::from_int(i as i128 + 1).powf(&e_t) * c_t.clone();
                Complex::new(z.re * s.clone(), z.im * s)
            })
            .collect();
        Ok(Self::from_complex(FunctionId::Custom(label), vals, growth))
    }

    /// Pointwise product; the growth certificate is the product of the two.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.pointwise(
            other,
            "·",
            Growth::product(self.growth, other.growth),
            |a, b| a.checked_mul(b),
            |a, b| a * b,
        )
    }

    /// Pointwise quotient (entries where the divisor vanishes become 0). No growth
    /// bound can be inferred, so the caller supplies one.
    pub fn pointwise_div(&self, other: &Self, growth: Growth) -> Result<Self, ArithError> {
        self.pointwise(
            other,
            "/",
            growth,
            |a, b| {
                if b.is_zero() {
                    Some(Q::zero())
                } else {
                    a.checked_div(b)
                }
            },
            |a, b| {
                if b.re.is_zero() && b.im.is_zero() {
                    Complex::zero()
                } else {
                    a / b
                }
            },
        )
    }

    fn pointwise(
        &self,
        other: &Self,
        op: &str,
        growth: Growth,
        exact: impl Fn(&Q, &Q) -> Option<Q>,
        inexact: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self, ArithError> {
        if self.len() != other.len() {
            return Err(ArithError::LengthMismatch(self.len(), other.len()));
        }
        let label = format!("({}){}({})", self.fid, op, other.fid);
        if let (Some(a), Some(b)) = (self.rationals(), other.rationals()) {
            let mut out = Vec::with_capacity(a.len());
            for (i, (x, y)) in a.iter().zip(&b).enumerate() {
                out.push(exact(x, y).ok_or_else(|| overflow(&label, i + 1))?);
            }
            return Ok(Self::from_rationals(FunctionId::Custom(label), out, growth).normalized());
        }
        let vals = self
            .complex_values()
            .into_iter()
            .zip(other.complex_values())
            .map(|(a, b)| inexact(a, b))
            .collect();
        Ok(Self::from_complex(FunctionId::Custom(label), vals, growth))
    }

    /// Entries with `keep(n) == false` set to zero.
    pub fn filtered(&self, label: &str, keep: impl Fn(u64) -> bool) -> Self {
        let keep_i = |i: usize| keep(i as u64 + 1);
        let values = match &self.values {
            TableValues::Integer(v) => TableValues::Integer(
                v.iter()
                    .enumerate()
                    .map(|(i, &x)| if keep_i(i) { x } else { 0 })
                    .collect(),
            ),
            TableValues::Rational(v) => TableValues::Rational(
                v.iter()
                    .enumerate()
                    .map(|(i, &x)| if keep_i(i) { x } else { Q::zero() })
                    .collect(),
            ),
            TableValues::Complex(v) => TableValues::Complex(
                v.iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if keep_i(i) {
                            x.clone()
                        } else {
                            Complex::zero()
                        }
                    })
                    .collect(),
            ),
        };
        Self::new(
            FunctionId::Custom(format!("{}[{}]", self.fid, label)),
            values,
            self.growth,
        )
    }

    /// `n ↦ (-1)^n f(n)`.
    pub fn alternated(&self) -> Self {
        let values = match &self.values {
            TableValues::Integer(v) => TableValues::Integer(
                v.iter()
                    .enumerate()
                    .map(|(i, &x)| if i % 2 == 1 { x } else { -x })
                    .collect(),
            ),
            TableValues::Rational(v) => TableValues::Rational(
                v.iter()
                    .enumerate()
                    .map(|(i, &x)| if i % 2 == 1 { x } else { -x })
                    .collect(),
            ),
            TableValues::Complex(v) => TableValues::Complex(
                v.iter()
                    .enumerate()
                    .map(|(i, x)| if i % 2 == 1 { x.clone() } else { -x.clone() })
                    .collect(),
            ),
        };
        Self::new(
            FunctionId::Custom(format!("(-1)^n*{}", self.fid)),
            values,
            self.growth,
        )
    }

    /// Rational tables whose entries are all integers become integer tables.
    fn normalized(self) -> Self {
        if let TableValues::Rational(v) = &self.values {
            if v.iter().all(|q| q.is_integer()) {
                let ints = v.iter().map(|q| *q.numer()).collect();
                return Self {
                    values: TableValues::Integer(ints),
                    ..self
                };
            }
        }
        self
    }
}

pub(crate) fn overflow(label: &str, n: usize) -> ArithError {
    ArithError::Overflow {
        fid: label.to_string(),
        n: n as u64,
    }
}

pub(crate) fn checked_pow_i128(base: i128, e: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn mult_exact(
    sieve: &Sieve,
    n: usize,
    label: &str,
    local: impl Fn(u64, u32) -> Option<Q>,
) -> Result<Vec<Q>, ArithError> {
    let mut out = Vec::with_capacity(n);
    for m in 1..=n as u64 {
        let mut acc = Q::one();
        for (p, e) in sieve.factorize(m) {
            acc = local(p, e)
                .and_then(|v| acc.checked_mul(&v))
                .ok_or_else(|| overflow(label, m as usize))?;
        }
        out.push(acc);
    }
    Ok(out)
}

fn mult_real<T: Real>(sieve: &Sieve, n: usize, local: impl Fn(u64, u32) -> T) -> Vec<Complex<T>> {
    (1..=n as u64)
        .map(|m| {
            let v = sieve
                .factorize(m)
                .into_iter()
                .fold(T::one(), |acc, (p, e)| acc * local(p, e));
            re(v)
        })
        .collect()
}

fn chi1(n: u64) -> i128 {
    match n % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn mobius_values(sieve: &Sieve, n: usize) -> Vec<i128> {
    (1..=n as u64)
        .map(|m| {
            let f = sieve.factorize(m);
            if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Divisor-sum sieve `n ↦ Σ_{d|n} w(d, n)` in exact arithmetic.
fn divisor_sum(
    n: usize,
    label: &str,
    w: impl Fn(u64, u64) -> Option<i128>,
) -> Result<Vec<i128>, ArithError> {
    let mut acc = vec![0i128; n];
    for d in 1..=n as u64 {
        let mut m = d;
        while m <= n as u64 {
            let i = m as usize - 1;
            acc[i] = w(d, m)
                .and_then(|x| acc[i].checked_add(x))
                .ok_or_else(|| overflow(label, m as usize))?;
            m += d;
        }
    }
    Ok(acc)
}

fn sigma_one(v: u64) -> f64 {
    (1..=v)
        .filter(|d| v.is_multiple_of(*d))
        .map(|d| d as f64)
        .sum()
}

/// Tabulate `fid` on `1..=n`.
pub fn build_table<T: Real>(fid: &FunctionId, n: usize) -> Result<ArithTable<T>, ArithError> {
    if n == 0 {
        return Err(ArithError::InvalidParameter(
            "table length must be at least 1".into(),
        ));
    }
    let label = fid.to_string();
    let sieve = Sieve::new(n);
    let omega = |m: u64| sieve.factorize(m).len() as u32;
    let ints = |v: Vec<i128>, g: Growth| ArithTable::from_integers(fid.clone(), v, g);
    let exact = |v: Vec<Q>, g: Growth| ArithTable::from_rationals(fid.clone(), v, g).normalized();
    let range = || 1..=n as u64;
    let table = match fid {
        FunctionId::One => ints(vec![1; n], Growth::new(1.0, 0.0)),
        FunctionId::Mobius => ints(mobius_values(&sieve, n), Growth::new(1.0, 0.0)),
        FunctionId::MobiusAbs => ints(
            mobius_values(&sieve, n)
                .into_iter()
                .map(|x| x.abs())
                .collect(),
            Growth::new(1.0, 0.0),
        ),
        FunctionId::Totient => exact(
            mult_exact(&sieve, n, &label, |p, e| {
                let p = p as i128;
                Some(Q::from_integer(
                    checked_pow_i128(p, e - 1)?.checked_mul(p - 1)?,
                ))
            })?,
            Growth::new(1.0, 1.0),
        ),
        FunctionId::Jordan(alpha) => {
            let growth = Growth::new(1.0, alpha.max(0.0));
            if is_int(*alpha) {
                let a = *alpha as i32;
                let k = a.unsigned_abs();
                exact(
                    mult_exact(&sieve, n, &label, |p, e| {
                        let p = p as i128;
                        if a >= 0 {
                            let hi = checked_pow_i128(p, k * e)?;
                            let lo = checked_pow_i128(p, k * (e - 1))?;
                            Some(Q::from_integer(hi.checked_sub(lo)?))
                        } else {
                            let num = 1i128.checked_sub(checked_pow_i128(p, k)?)?;
                            Some(Q::new(num, checked_pow_i128(p, k * e)?))
                        }
                    })?,
                    growth,
                )
            } else {
                let a = T::lit(*alpha);
                let vals = mult_real(&sieve, n, |p, e| {
                    let p = T::from_int(p as i128);
                    p.powf(&(a.clone() * T::from_int(e as i128))) * (T::one() - p.powf(&-a.clone()))
                });
                ArithTable::from_complex(fid.clone(), vals, growth)
            }
        }
        FunctionId::Mangoldt => {
            let primes: Vec<u64> = range()
                .map(|m| match sieve.factorize(m).as_slice() {
                    [(p, _)] => *p,
                    _ => 0,
                })
                .collect();
            let vals = primes
                .iter()
                .map(|&p| {
                    re(if p == 0 {
                        T::zero()
                    } else {
                        T::from_int(p as i128).ln()
                    })
                })
                .collect();
            let mut t = ArithTable::from_complex(fid.clone(), vals, Growth::new(1.0, 1.0));
            t.mangoldt_primes = Some(primes);
            t
        }
        FunctionId::Sigma(s) => {
            let growth = Growth::new(2.0, s.max(0.0) + 1.0);
            if is_int(*s) {
                let a = *s as i32;
                let k = a.unsigned_abs();
                exact(
                    mult_exact(&sieve, n, &label, |p, e| {
                        let p = p as i128;
                        let mut sum: i128 = 0;
                        for j in 0..=e {
                            sum = sum.checked_add(checked_pow_i128(p, k * j)?)?;
                        }
                        if a >= 0 {
                            Some(Q::from_integer(sum))
                        } else {
                            Some(Q::new(sum, checked_pow_i128(p, k * e)?))
                        }
                    })?,
                    growth,
                )
            } else {
                let s = T::lit(*s);
                let vals = mult_real(&sieve, n, |p, e| {
                    let ps = T::from_int(p as i128).powf(&s);
                    let mut term = T::one();
                    let mut sum = T::one();
                    for _ in 0..e {
                        term = term * ps.clone();
                        sum = sum + term.clone();
                    }
                    sum
                });
                ArithTable::from_complex(fid.clone(), vals, growth)
            }
        }
        FunctionId::DivisorD => ints(
            range()
                .map(|m| {
                    sieve
                        .factorize(m)
                        .iter()
                        .map(|&(_, e)| e as i128 + 1)
                        .product()
                })
                .collect(),
            Growth::new(4.0, 1.0),
        ),
        FunctionId::DivisorDSq => ints(
            range()
                .map(|m| {
                    sieve
                        .factorize(m)
                        .iter()
                        .map(|&(_, e)| 2 * e as i128 + 1)
                        .product()
                })
                .collect(),
            Growth::new(4.0, 1.0),
        ),
        FunctionId::Liouville => ints(
            range()
                .map(|m| {
                    let big_omega: u32 = sieve.factorize(m).iter().map(|&(_, e)| e).sum();
                    if big_omega.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
            Growth::new(1.0, 0.0),
        ),
        FunctionId::Omega => ints(
            range().map(|m| omega(m) as i128).collect(),
            Growth::new(1.0, 1.0),
        ),
        FunctionId::TwoPowOmega => ints(
            range().map(|m| 1i128 << omega(m)).collect(),
            Growth::new(4.0, 1.0),
        ),
        FunctionId::NegOnePowOmega => ints(
            range()
                .map(|m| if omega(m) % 2 == 0 { 1 } else { -1 })
                .collect(),
            Growth::new(1.0, 0.0),
        ),
        FunctionId::Ramanujan(v) => {
            if *v == 0 {
                return Err(ArithError::InvalidParameter(
                    "ramanujan needs v >= 1".into(),
                ));
            }
            let mu = mobius_values(&sieve, n);
            let vals = range()
                .map(|m| {
                    let g = num_integer::gcd(m, *v);
                    (1..=g)
                        .filter(|d| g % d == 0)
                        .map(|d| mu[(m / d) as usize - 1] * d as i128)
                        .sum()
                })
                .collect();
            ints(vals, Growth::new(sigma_one(*v), 0.0))
        }
        FunctionId::R2 => ints(
            divisor_sum(n, &label, |d, _| Some(4 * chi1(d)))?,
            Growth::new(8.0, 0.5),
        ),
        FunctionId::R4 => ints(
            divisor_sum(n, &label, |d, _| {
                Some(if d % 4 == 0 { 0 } else { 8 * d as i128 })
            })?,
            Growth::new(16.0, 1.5),
        ),
        FunctionId::R8 => {
            let raw = divisor_sum(n, &label, |d, m| {
                let cube = checked_pow_i128(d as i128, 3)?;
                let signed = if (d + m) % 2 == 0 { cube } else { -cube };
                signed.checked_mul(16)
            })?;
            ints(raw, Growth::new(20.0, 3.0))
        }
        FunctionId::Chi1 => ints(range().map(chi1).collect(), Growth::new(1.0, 0.0)),
        FunctionId::CoreGamma => ints(
            range()
                .map(|m| sieve.factorize(m).iter().map(|&(p, _)| p as i128).product())
                .collect(),
            Growth::new(1.0, 1.0),
        ),
        FunctionId::MuK(k) => {
            if *k == 0 {
                return Err(ArithError::InvalidParameter("mu_k needs k >= 1".into()));
            }
            let k2 = 2 * *k;
            let vals = range()
                .map(|m| {
                    let f = sieve.factorize(m);
                    if f.iter().any(|&(_, e)| e > 1) {
                        return Complex::zero();
                    }
                    let w = f.len() as u32 % k2;
                    if w == 0 {
                        Complex::one()
                    } else if w == *k {
                        -Complex::<T>::one()
                    } else {
                        cis(&(T::pi() * T::from_ratio(w as i128, *k as i128)))
                    }
                })
                .collect();
            ArithTable::from_complex(fid.clone(), vals, Growth::new(1.0, 0.0))
        }
        FunctionId::PhiAbsMu => {
            let mu = mobius_values(&sieve, n);
            let mut out = Vec::with_capacity(n);
            for m in range() {
                let v = if mu[m as usize - 1] == 0 {
                    0
                } else {
                    sieve
                        .factorize(m)
                        .iter()
                        .map(|&(p, _)| p as i128 - 1)
                        .try_fold(1i128, |acc, x| acc.checked_mul(x))
                        .ok_or_else(|| overflow(&label, m as usize))?
                };
                out.push(v);
            }
            ints(out, Growth::new(1.0, 1.0))
        }
        FunctionId::Custom(_) => {
            return Err(ArithError::InvalidParameter(
                "custom tables are assembled from other tables, not sieved".into(),
            ))
        }
    };
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(fid: &str, n: usize) -> Vec<i128> {
        build_table::<f64>(&fid.parse().unwrap(), n)
            .unwrap()
            .integers()
            .unwrap()
    }

    #[test]
    fn mobius_values_small() {
        let mu = ints("mobius", 30);
        assert_eq!(mu[0], 1);
        assert_eq!(mu[11], 0);
        assert_eq!(mu[29], -1);
    }

    #[test]
    fn jordan_and_sigma() {
        assert_eq!(ints("jordan:2", 5), vec![1, 3, 8, 12, 24]);
        assert_eq!(ints("sigma:1", 6), vec![1, 3, 4, 7, 6, 12]);
        let s = build_table::<f64>(&"sigma:-1".parse().unwrap(), 6).unwrap();
        assert_eq!(s.get(6).unwrap(), ArithValue::Rational(Q::from_integer(2)));
        let j = build_table::<f64>(&"jordan:-1".parse().unwrap(), 6).unwrap();
        assert_eq!(j.get(6).unwrap(), ArithValue::Rational(Q::new(2, 6)));
    }

    #[test]
    fn squares_counts() {
        assert_eq!(&ints("r2", 5)[..], &[4, 4, 0, 4, 8]);
        assert_eq!(ints("r4", 2), vec![8, 24]);
        assert_eq!(ints("r8", 2), vec![16, 112]);
    }

    #[test]
    fn ramanujan_six() {
        // c_n(6) = Σ_{d | gcd(n,6)} μ(n/d) d
        assert_eq!(ints("ramanujan:6", 6), vec![1, 1, 2, -2, -1, 2]);
    }

    #[test]
    fn overflow_is_reported() {
        let err = build_table::<f64>(&FunctionId::Jordan(40.0), 20).unwrap_err();
        assert!(matches!(err, ArithError::Overflow { .. }));
    }

    #[test]
    fn mu_k_one_is_mobius() {
        let t = build_table::<f64>(&FunctionId::MuK(1), 50).unwrap();
        let mu = ints("mobius", 50);
        for (z, m) in t.complex_values().iter().zip(mu) {
            assert_eq!(z.re, m as f64);
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn growth_certificates_hold() {
        for s in [
            "mobius",
            "totient",
            "jordan:3",
            "sigma:2",
            "r2",
            "r4",
            "r8",
            "divisor_d_sq",
            "ramanujan:12",
        ] {
            let t = build_table::<f64>(&s.parse().unwrap(), 2000).unwrap();
            assert_eq!(t.growth_violation(), None, "{s}");
        }
    }
}
