//! MPFR-backed scalar with a thread-scoped working precision.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::real::Real;

/// Default significand width for a computation.
pub const DEFAULT_BITS: u32 = 128;

thread_local! {
    static WORKING_BITS: Cell<u32> = const { Cell::new(DEFAULT_BITS) };
}

/// Binary significand precision of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 53;

    pub fn new(bits: u32) -> Option<Self> {
        (bits >= Self::MIN_BITS && bits <= rug::float::prec_max()).then_some(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// The precision currently installed on this thread.
    pub fn current() -> Self {
        Self {
            bits: WORKING_BITS.with(Cell::get),
        }
    }

    /// Runs `f` with this precision installed on the current thread, restoring
    /// the previous one afterwards (also on unwind).
    pub fn scope<R>(self, f: impl FnOnce() -> R) -> R {
        struct Restore(u32);
        impl Drop for Restore {
            fn drop(&mut self) {
                WORKING_BITS.with(|b| b.set(self.0));
            }
        }
        let _restore = Restore(WORKING_BITS.with(|b| b.replace(self.bits)));
        f()
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self { bits: DEFAULT_BITS }
    }
}

fn bits() -> u32 {
    WORKING_BITS.with(Cell::get)
}

/// Multiple-precision float. New values take the thread's working precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mpf(Float);

impl Mpf {
    pub fn from_float(f: Float) -> Self {
        Mpf(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn precision_bits(&self) -> u32 {
        self.0.prec()
    }

    fn wrap(f: Float) -> Self {
        Mpf(f)
    }
}

impl fmt::Debug for Mpf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mpf({})", self.to_decimal())
    }
}

impl fmt::Display for Mpf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(digits) => write!(f, "{}", self.0.to_string_radix(10, Some(digits.max(1)))),
            None => f.write_str(&self.to_decimal()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Mpf {
            type Output = Mpf;
            fn $m(self, rhs: Mpf) -> Mpf {
                Mpf::wrap(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Mpf> for Mpf {
            type Output = Mpf;
            fn $m(self, rhs: &'a Mpf) -> Mpf {
                Mpf::wrap(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Rem for Mpf {
    type Output = Mpf;
    fn rem(self, rhs: Mpf) -> Mpf {
        let q = Float::with_val(self.0.prec(), &self.0 / &rhs.0).trunc();
        Mpf::wrap(self.0 - q * rhs.0)
    }
}

impl Neg for Mpf {
    type Output = Mpf;
    fn neg(self) -> Mpf {
        Mpf::wrap(-self.0)
    }
}

impl Zero for Mpf {
    fn zero() -> Self {
        Mpf(Float::new(bits()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mpf {
    fn one() -> Self {
        Mpf(Float::with_val(bits(), 1))
    }
}

impl Num for Mpf {
    type FromStrRadixErr = rug::float::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(Mpf(Float::with_val(bits(), parsed)))
    }
}

impl FromPrimitive for Mpf {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Mpf(Float::with_val(bits(), n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Mpf(Float::with_val(bits(), n)))
    }
    fn from_i128(n: i128) -> Option<Self> {
        Some(Mpf(Float::with_val(bits(), n)))
    }
    fn from_u128(n: u128) -> Option<Self> {
        Some(Mpf(Float::with_val(bits(), n)))
    }
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| Mpf(Float::with_val(bits(), x)))
    }
}

impl ToPrimitive for Mpf {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_integer().and_then(|i| i.to_i64())
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_integer().and_then(|i| i.to_u64())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.to_f64())
    }
}

impl Real for Mpf {
    fn mantissa_bits() -> u32 {
        bits()
    }
    fn pi() -> Self {
        Mpf(Float::with_val(bits(), Constant::Pi))
    }
    fn abs(&self) -> Self {
        Mpf(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        Mpf(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Mpf(self.0.clone().exp())
    }
    fn exp_m1(&self) -> Self {
        Mpf(self.0.clone().exp_m1())
    }
    fn ln(&self) -> Self {
        Mpf(self.0.clone().ln())
    }
    fn ln_1p(&self) -> Self {
        Mpf(self.0.clone().ln_1p())
    }
    fn sin(&self) -> Self {
        Mpf(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Mpf(self.0.clone().cos())
    }
    fn atan2(&self, x: &Self) -> Self {
        Mpf(self.0.clone().atan2(&x.0))
    }
    fn powf(&self, e: &Self) -> Self {
        Mpf(self.0.clone().pow(&e.0))
    }
    fn powi(&self, n: i32) -> Self {
        Mpf(self.0.clone().pow(n))
    }
    fn floor(&self) -> Self {
        Mpf(self.0.clone().floor())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_decimal(&self) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, None)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        Float::parse(s.trim())
            .ok()
            .map(|p| Mpf(Float::with_val(bits(), p)))
    }
    fn epsilon() -> Self {
        Mpf(Float::with_val(bits(), 1) >> (bits() - 1))
    }
}

impl PartialEq<f64> for Mpf {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Mpf {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_scope_restores() {
        let outer = Precision::current();
        Precision::new(200).unwrap().scope(|| {
            assert_eq!(Mpf::one().precision_bits(), 200);
        });
        assert_eq!(Precision::current(), outer);
    }

    #[test]
    fn precision_floor() {
        assert!(Precision::new(52).is_none());
        assert!(Precision::new(53).is_some());
    }

    #[test]
    fn decimal_round_trip() {
        let x = Mpf::pi() / Mpf::from_int(7);
        let back = Mpf::parse_decimal(&x.to_decimal()).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn epsilon_matches_bits() {
        let e = <Mpf as Real>::epsilon();
        let one = Mpf::one();
        assert!(one.clone() + e.clone() > one);
        assert_eq!(e.to_f64().unwrap(), 2f64.powi(1 - DEFAULT_BITS as i32));
    }
}
