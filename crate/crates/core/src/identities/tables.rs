//! Serializable recipes for the coefficient tables the catalog needs.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    build_table, dirichlet_convolve, gcd_sum_table, h_transform, kernel_product_table, ArithError,
    ArithTable, FunctionId, Growth,
};
use crate::numerics::complex::{cis, powi, re};
use crate::numerics::Real;

/// How to build an arithmetic table on `1..=N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TableExpr {
    Fn {
        id: FunctionId,
    },
    /// `(num/den) · n^pow · inner(n)`
    Scaled {
        inner: Box<TableExpr>,
        num: i64,
        den: i64,
        pow: f64,
    },
    Mul {
        a: Box<TableExpr>,
        b: Box<TableExpr>,
    },
    /// Pointwise quotient with a caller-certified growth bound.
    Div {
        a: Box<TableExpr>,
        b: Box<TableExpr>,
        growth: Growth,
    },
    /// Dirichlet convolution.
    Conv {
        a: Box<TableExpr>,
        b: Box<TableExpr>,
    },
    /// `h(n) = Σ_{d|n} μ(d)/d · f(n/d)`
    HTransform {
        inner: Box<TableExpr>,
    },
    /// `(1/n) Σ_{k≤n} gcd(n,k) g(gcd(n,k))`
    GcdSum {
        inner: Box<TableExpr>,
    },
    /// `∏_{p|n} (1 - f(p))`
    KernelProduct {
        inner: Box<TableExpr>,
        growth: Growth,
    },
    /// `n ↦ values[(n-1) mod len]`
    Periodic {
        values: Vec<i64>,
    },
    /// `log n`
    LogN,
    /// `(1 + e^{πi/k})^{ω(n)}`
    RootPowOmega {
        k: u32,
    },
    /// Entries below `from` set to zero.
    From {
        inner: Box<TableExpr>,
        from: u64,
    },
    /// `(-1)^n inner(n)`
    Alternate {
        inner: Box<TableExpr>,
    },
}

pub fn fid(s: &str) -> TableExpr {
    TableExpr::Fn {
        id: s
            .parse()
            .unwrap_or_else(|e| panic!("bad function id {s}: {e}")),
    }
}

impl TableExpr {
    pub fn scaled(self, num: i64, den: i64, pow: f64) -> Self {
        TableExpr::Scaled {
            inner: Box::new(self),
            num,
            den,
            pow,
        }
    }

    pub fn times(self, other: TableExpr) -> Self {
        TableExpr::Mul {
            a: Box::new(self),
            b: Box::new(other),
        }
    }

    pub fn over(self, other: TableExpr, growth: Growth) -> Self {
        TableExpr::Div {
            a: Box::new(self),
            b: Box::new(other),
            growth,
        }
    }

    /// `1 * self`
    pub fn summatory(self) -> Self {
        TableExpr::Conv {
            a: Box::new(fid("one")),
            b: Box::new(self),
        }
    }

    pub fn alternate(self) -> Self {
        TableExpr::Alternate {
            inner: Box::new(self),
        }
    }

    pub fn from(self, from: u64) -> Self {
        TableExpr::From {
            inner: Box::new(self),
            from,
        }
    }

    pub fn build<T: Real>(&self, n: usize) -> Result<ArithTable<T>, ArithError> {
        let table = match self {
            TableExpr::Fn { id } => build_table(id, n)?,
            TableExpr::Scaled {
                inner,
                num,
                den,
                pow,
            } => {
                if *den == 0 {
                    return Err(ArithError::InvalidParameter("zero denominator".into()));
                }
                let c = crate::arith::Q::new(*num as i128, *den as i128);
                inner.build::<T>(n)?.scaled_pow(c, *pow)?
            }
            TableExpr::Mul { a, b } => a.build::<T>(n)?.pointwise_mul(&b.build(n)?)?,
            TableExpr::Div { a, b, growth } => {
                a.build::<T>(n)?.pointwise_div(&b.build(n)?, *growth)?
            }
            TableExpr::Conv { a, b } => dirichlet_convolve(&a.build::<T>(n)?, &b.build(n)?)?,
            TableExpr::HTransform { inner } => h_transform(&inner.build::<T>(n)?)?,
            TableExpr::GcdSum { inner } => gcd_sum_table(&inner.build::<T>(n)?)?,
            TableExpr::KernelProduct { inner, growth } => {
                kernel_product_table(&inner.build::<T>(n)?, *growth)?
            }
            TableExpr::Periodic { values } => {
                if values.is_empty() {
                    return Err(ArithError::InvalidParameter("empty period".into()));
                }
                let c = values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64;
                let vals = (0..n).map(|i| values[i % values.len()] as i128).collect();
                ArithTable::from_integers(
                    FunctionId::Custom(String::new()),
                    vals,
                    Growth::new(c, 0.0),
                )
            }
            TableExpr::LogN => {
                // log n ≤ (4/e) n^{1/4}
                ArithTable::from_fn("", n, Growth::new(1.5, 0.25), |m| {
                    re(T::from_u64(m).unwrap().ln())
                })
            }
            TableExpr::RootPowOmega { k } => {
                if *k == 0 {
                    return Err(ArithError::InvalidParameter(
                        "root order must be >= 1".into(),
                    ));
                }
                let omega = build_table::<T>(&FunctionId::Omega, n)?
                    .integers()
                    .expect("integer table");
                let w =
                    cis(&(T::pi() / T::from_u32(*k).unwrap())) + Complex::new(T::one(), T::zero());
                let vals = omega.iter().map(|&e| powi(&w, e as u64)).collect();
                // |1 + w|^ω ≤ 2^ω ≤ d(n) ≤ 2√n
                ArithTable::from_complex(
                    FunctionId::Custom(String::new()),
                    vals,
                    Growth::new(2.0, 0.5),
                )
            }
            TableExpr::From { inner, from } => inner.build::<T>(n)?.filtered("", |m| m >= *from),
            TableExpr::Alternate { inner } => inner.build::<T>(n)?.alternated(),
        };
        Ok(table.with_fid(FunctionId::Custom(self.to_string())))
    }

    /// Whether the built table is known to vanish identically.
    pub fn is_zero_table<T: Real>(table: &ArithTable<T>) -> bool {
        table.complex_values().iter().all(|z| z.is_zero())
    }
}

impl fmt::Display for TableExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableExpr::Fn { id } => write!(f, "{id}"),
            TableExpr::Scaled {
                inner,
                num,
                den,
                pow,
            } => {
                if *den == 1 {
                    write!(f, "{num}")?;
                } else {
                    write!(f, "({num}/{den})")?;
                }
                if *pow != 0.0 {
                    write!(f, "·n^{pow}")?;
                }
                write!(f, "·{inner}")
            }
            TableExpr::Mul { a, b } => write!(f, "({a})·({b})"),
            TableExpr::Div { a, b, .. } => write!(f, "({a})/({b})"),
            TableExpr::Conv { a, b } => write!(f, "({a})*({b})"),
            TableExpr::HTransform { inner } => write!(f, "h[{inner}]"),
            TableExpr::GcdSum { inner } => write!(f, "gcd_sum[{inner}]/n"),
            TableExpr::KernelProduct { inner, .. } => write!(f, "prod_p(1-{inner}(p))"),
            TableExpr::Periodic { values } => write!(f, "periodic{values:?}"),
            TableExpr::LogN => f.write_str("log"),
            TableExpr::RootPowOmega { k } => write!(f, "(1+e^(pi i/{k}))^omega"),
            TableExpr::From { inner, from } => write!(f, "{inner}[n>={from}]"),
            TableExpr::Alternate { inner } => write!(f, "(-1)^n·{inner}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_build() {
        let t: ArithTable<f64> = fid("one").scaled(1, 1, 1.0).build(6).unwrap();
        assert_eq!(t.integers().unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let t: ArithTable<f64> = TableExpr::Periodic { values: vec![1, 3] }.build(4).unwrap();
        assert_eq!(t.integers().unwrap(), vec![1, 3, 1, 3]);
        let t: ArithTable<f64> = fid("mobius").summatory().build(6).unwrap();
        assert_eq!(t.integers().unwrap(), vec![1, 0, 0, 0, 0, 0]);
        let t: ArithTable<f64> = TableExpr::RootPowOmega { k: 1 }.from(2).build(6).unwrap();
        let v = t.complex_values();
        assert_eq!(v[0], Complex::new(0.0, 0.0));
        assert!(v[5].norm() < 1e-15);
        assert!((v[1] - Complex::new(1.0, 0.0)).norm() > 0.5);
    }

    #[test]
    fn mu_k_divisor_sum_matches_closed_form() {
        for k in 1..=3 {
            let conv: ArithTable<f64> = fid(&format!("mu_k:{k}")).summatory().build(60).unwrap();
            let closed: ArithTable<f64> = TableExpr::RootPowOmega { k }.build(60).unwrap();
            for (a, b) in conv.complex_values().iter().zip(closed.complex_values()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn recipes_round_trip_json() {
        let e = fid("r4").scaled(1, 8, 0.0).over(
            TableExpr::Periodic { values: vec![1, 3] },
            Growth::new(2.0, 1.5),
        );
        let s = serde_json::to_string(&e).unwrap();
        let back: TableExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
