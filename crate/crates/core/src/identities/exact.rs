//! Exact table identities checked entry by entry.

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    build_table, dirichlet_convolve, gcd_sum_table, h_transform, ArithError, FunctionId, Sieve, Q,
};

/// A chain of exact equalities between functions of `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ExactCheck {
    /// `n h(n) = Σ_{d|n} d g(d) φ(n/d) = Σ_{k≤n} gcd(n,k) g(gcd(n,k))`, `h` from `f = 1*g`.
    HTriple { g: FunctionId },
    /// `Σ_{d|n} d f(d) μ(n/d) = Σ_{d|n} d g(d) φ(n/d) = Σ_{k≤n} gcd(n,k) g(gcd(n,k))`
    DivisorTriple { g: FunctionId },
    /// `J_{α+1}(n) = Σ_{k≤n} gcd(n,k) J_α(gcd(n,k))`
    JordanGcd { alpha: u32 },
}

/// Result of one [`ExactCheck`] on `1..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOutcome {
    pub params: String,
    /// `n` where the chain breaks.
    pub mismatches: Vec<u64>,
    pub first_sum: Q,
    pub last_sum: Q,
}

fn exact_values(fid: &FunctionId, n: usize) -> Result<Vec<Q>, ArithError> {
    build_table::<f64>(fid, n)?
        .rationals()
        .ok_or_else(|| ArithError::InvalidParameter(format!("{fid} is not exact")))
}

fn checked(x: Option<Q>) -> Result<Q, ArithError> {
    x.ok_or_else(|| ArithError::Overflow {
        fid: "exact check".into(),
        n: 0,
    })
}

/// `Σ_{k≤n} gcd(n,k) g(gcd(n,k))` by direct enumeration.
fn brute_gcd_sum(g: &[Q], n: u64) -> Result<Q, ArithError> {
    let mut s = Q::zero();
    for k in 1..=n {
        let d = n.gcd(&k);
        let t = checked(g[d as usize - 1].checked_mul(&Q::from_integer(d as i128)))?;
        s = checked(s.checked_add(&t))?;
    }
    Ok(s)
}

/// `Σ_{d|n} d a(d) b(n/d)`
fn weighted_divisor_sum(sieve: &Sieve, a: &[Q], b: &[Q], n: u64) -> Result<Q, ArithError> {
    let mut s = Q::zero();
    for d in sieve.divisors(n) {
        let t = checked(a[d as usize - 1].checked_mul(&b[(n / d) as usize - 1]))?;
        let t = checked(t.checked_mul(&Q::from_integer(d as i128)))?;
        s = checked(s.checked_add(&t))?;
    }
    Ok(s)
}

impl ExactCheck {
    pub fn params(&self) -> String {
        match self {
            ExactCheck::HTriple { g } | ExactCheck::DivisorTriple { g } => format!("g={g}"),
            ExactCheck::JordanGcd { alpha } => format!("alpha={alpha}"),
        }
    }

    /// The columns of the chain, each a function on `1..=n`.
    fn columns(&self, n: usize) -> Result<Vec<Vec<Q>>, ArithError> {
        let sieve = Sieve::new(n);
        let nn = n as u64;
        match self {
            ExactCheck::HTriple { g } | ExactCheck::DivisorTriple { g } => {
                let gt = build_table::<f64>(g, n)?;
                let gv = exact_values(g, n)?;
                let phi = exact_values(&FunctionId::Totient, n)?;
                let via_phi = (1..=nn)
                    .map(|m| weighted_divisor_sum(&sieve, &gv, &phi, m))
                    .collect::<Result<_, _>>()?;
                let brute = (1..=nn)
                    .map(|m| brute_gcd_sum(&gv, m))
                    .collect::<Result<_, _>>()?;
                let f = dirichlet_convolve(&build_table::<f64>(&FunctionId::One, n)?, &gt)?;
                let first: Vec<Q> = if matches!(self, ExactCheck::HTriple { .. }) {
                    let h = h_transform(&f)?.rationals().expect("exact h");
                    h.iter()
                        .enumerate()
                        .map(|(i, x)| checked(x.checked_mul(&Q::from_integer(i as i128 + 1))))
                        .collect::<Result<_, _>>()?
                } else {
                    let fv = f.rationals().expect("exact f");
                    let mu = exact_values(&FunctionId::Mobius, n)?;
                    (1..=nn)
                        .map(|m| weighted_divisor_sum(&sieve, &fv, &mu, m))
                        .collect::<Result<_, _>>()?
                };
                let mut cols = vec![first, via_phi, brute];
                if matches!(self, ExactCheck::DivisorTriple { .. }) {
                    let lib = gcd_sum_table(&gt)?.rationals().expect("exact gcd sum");
                    cols.push(
                        lib.iter()
                            .enumerate()
                            .map(|(i, x)| checked(x.checked_mul(&Q::from_integer(i as i128 + 1))))
                            .collect::<Result<_, _>>()?,
                    );
                }
                Ok(cols)
            }
            ExactCheck::JordanGcd { alpha } => {
                let hi = exact_values(&FunctionId::Jordan(*alpha as f64 + 1.0), n)?;
                let lo = exact_values(&FunctionId::Jordan(*alpha as f64), n)?;
                let brute = (1..=nn)
                    .map(|m| brute_gcd_sum(&lo, m))
                    .collect::<Result<_, _>>()?;
                Ok(vec![hi, brute])
            }
        }
    }

    pub fn run(&self, n_max: usize) -> Result<ExactOutcome, ArithError> {
        let cols = self.columns(n_max)?;
        let mismatches = (0..n_max)
            .filter(|&i| cols.iter().any(|c| c[i] != cols[0][i]))
            .map(|i| i as u64 + 1)
            .collect();
        let sum = |c: &Vec<Q>| c.iter().fold(Q::zero(), |a, b| a + b);
        Ok(ExactOutcome {
            params: self.params(),
            mismatches,
            first_sum: sum(&cols[0]),
            last_sum: sum(cols.last().expect("at least two columns")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_hold() {
        for g in [
            FunctionId::One,
            FunctionId::Mobius,
            FunctionId::Totient,
            FunctionId::Liouville,
        ] {
            let out = ExactCheck::HTriple { g }.run(60).unwrap();
            assert!(out.mismatches.is_empty(), "{}", out.params);
        }
        let out = ExactCheck::DivisorTriple { g: FunctionId::R2 }
            .run(60)
            .unwrap();
        assert!(out.mismatches.is_empty());
        for alpha in 1..=3 {
            assert!(ExactCheck::JordanGcd { alpha }
                .run(60)
                .unwrap()
                .mismatches
                .is_empty());
        }
    }

    #[test]
    fn pillai_values() {
        // Σ_k gcd(n,k) for n = 1..6
        let one = vec![Q::from_integer(1); 6];
        for (n, w) in (1..=6u64).zip([1, 3, 5, 8, 9, 15]) {
            assert_eq!(brute_gcd_sum(&one, n).unwrap(), Q::from_integer(w));
        }
    }
}
