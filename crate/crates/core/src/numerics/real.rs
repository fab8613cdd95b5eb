//! The scalar abstraction every evaluator is generic over.

use std::fmt;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A real scalar with the transcendental operations the evaluators need.
///
/// Implemented for `f64` (53-bit, hardware) and [`Mpf`](super::Mpf)
/// (MPFR, precision taken from the thread's working [`Precision`](super::Precision)).
/// Arithmetic goes through the owned `num_traits::Num` operators, so generic code
/// clones where it needs to reuse an operand.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Significand bits of freshly constructed values.
    fn mantissa_bits() -> u32;

    fn pi() -> Self;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn exp_m1(&self) -> Self;
    fn ln(&self) -> Self;
    fn ln_1p(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn floor(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// Shortest decimal string that round-trips at this value's precision.
    fn to_decimal(&self) -> String;
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Unit roundoff `2^(1 - bits)`.
    fn epsilon() -> Self {
        Self::from_f64(2.0)
            .unwrap()
            .powi(1 - Self::mantissa_bits() as i32)
    }

    fn from_int(n: i128) -> Self {
        Self::from_i128(n).expect("integer representable")
    }

    fn from_ratio(num: i128, den: i128) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Exact conversion of an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn mantissa_bits() -> u32 {
        f64::MANTISSA_DIGITS
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn exp_m1(&self) -> Self {
        f64::exp_m1(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn ln_1p(&self) -> Self {
        f64::ln_1p(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn to_decimal(&self) -> String {
        format!("{:e}", self)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
}
