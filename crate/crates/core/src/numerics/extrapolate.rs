//! Extrapolation of sampled sequences `y(x)` to `x = 0`.

use serde::{Deserialize, Serialize};

use super::real::Real;
use super::NumericsError;

fn check_nodes<T: Real>(xs: &[T], ys: &[T], min: usize) -> Result<(), NumericsError> {
    if xs.len() != ys.len() {
        return Err(NumericsError::Degenerate(format!(
            "{} nodes but {} values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < min {
        return Err(NumericsError::Degenerate(format!(
            "need at least {min} nodes, got {}",
            xs.len()
        )));
    }
    for w in xs.windows(2) {
        if w[0] == w[1] {
            return Err(NumericsError::Degenerate(format!(
                "duplicate node {}",
                w[0]
            )));
        }
        if w[1] > w[0] {
            return Err(NumericsError::Degenerate(
                "nodes must decrease toward 0".into(),
            ));
        }
    }
    if !xs[xs.len() - 1].is_positive() {
        return Err(NumericsError::Degenerate("nodes must stay positive".into()));
    }
    Ok(())
}

fn neville_at_zero<T: Real>(xs: &[T], ys: &[T]) -> T {
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            let (xi, xk) = (xs[i].clone(), xs[i + k].clone());
            p[i] = (xi.clone() * p[i + 1].clone() - xk.clone() * p[i].clone()) / (xi - xk);
        }
    }
    p.swap_remove(0)
}

/// Polynomial (Neville) extrapolation of `y(x)` to `x = 0`.
///
/// Returns the limit and the magnitude of the last tableau correction, i.e. the
/// change from dropping the node farthest from zero.
pub fn richardson_extrapolate<T: Real>(xs: &[T], ys: &[T]) -> Result<(T, T), NumericsError> {
    check_nodes(xs, ys, 3)?;
    let full = neville_at_zero(xs, ys);
    let reduced = neville_at_zero(&xs[1..], &ys[1..]);
    let err = (full.clone() - reduced).abs();
    Ok((full, err))
}

/// One correction term `x^power · ln(x)^log_power` of an asymptotic expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorTerm {
    pub power: f64,
    pub log_power: u32,
}

impl ErrorTerm {
    pub fn new(power: f64, log_power: u32) -> Self {
        Self { power, log_power }
    }

    fn eval<T: Real>(&self, x: &T) -> T {
        let base = x.powf(&T::lit(self.power));
        if self.log_power == 0 {
            return base;
        }
        base * x.ln().powi(self.log_power as i32)
    }

    /// The first `count` terms of `Σ_m Σ_{j ≤ log_order} x^m ln^j x`, ordered by
    /// decreasing size as `x → 0`.
    pub fn log_series(log_order: u32, count: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(count);
        let mut m = 1.0;
        while out.len() < count {
            for j in (0..=log_order).rev() {
                if out.len() == count {
                    break;
                }
                out.push(Self::new(m, j));
            }
            m += 1.0;
        }
        out
    }
}

/// Generalized Richardson extrapolation: fits
/// `y(x) = L + Σ c_k φ_k(x)` exactly through the last `terms.len() + 1` nodes
/// (those closest to zero) and returns `L`. The error estimate is the change in
/// `L` when the node closest to zero and the last basis term are dropped.
pub fn extrapolate_with_basis<T: Real>(
    xs: &[T],
    ys: &[T],
    terms: &[ErrorTerm],
) -> Result<(T, T), NumericsError> {
    check_nodes(xs, ys, 2)?;
    let m = terms.len();
    if xs.len() < m + 1 {
        return Err(NumericsError::Degenerate(format!(
            "{} basis terms need {} nodes, got {}",
            m,
            m + 1,
            xs.len()
        )));
    }
    let start = xs.len() - (m + 1);
    let full = fit_constant(&xs[start..], &ys[start..], terms)?;
    if m == 0 {
        return Ok((full, T::zero()));
    }
    let end = xs.len() - 1;
    let reduced = fit_constant(&xs[start..end], &ys[start..end], &terms[..m - 1])?;
    let err = (full.clone() - reduced).abs();
    Ok((full, err))
}

fn fit_constant<T: Real>(xs: &[T], ys: &[T], terms: &[ErrorTerm]) -> Result<T, NumericsError> {
    let n = terms.len() + 1;
    let mut a: Vec<Vec<T>> = xs
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::one());
            row.extend(terms.iter().map(|t| t.eval(x)));
            row
        })
        .collect();
    for (row, y) in a.iter_mut().zip(ys) {
        row.push(y.clone());
    }
    let sol = solve(a)?;
    Ok(sol.into_iter().next().expect("nonempty system"))
}

/// Gaussian elimination with partial pivoting on an augmented `n × (n+1)` matrix.
fn solve<T: Real>(mut a: Vec<Vec<T>>) -> Result<Vec<T>, NumericsError> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if a[pivot][col].is_zero() {
            return Err(NumericsError::Degenerate(
                "singular extrapolation system".into(),
            ));
        }
        a.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col].clone() / a[col][col].clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..=n {
                let v = a[col][k].clone() * factor.clone();
                a[row][k] = a[row][k].clone() - v;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = a[row][n].clone();
        for k in row + 1..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let xs = [0.5, 0.25, 0.125];
        let (l, e) = richardson_extrapolate(&xs, &[3.0, 3.0, 3.0]).unwrap();
        assert_eq!(l, 3.0);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn linear_sequence() {
        let xs = [0.5, 0.25, 0.125];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 + 3.0 * x).collect();
        let (l, _) = richardson_extrapolate(&xs, &ys).unwrap();
        assert!((l - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exp_sequence() {
        let xs: Vec<f64> = (1..=8).map(|j| 2f64.powi(-j)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let (l, e) = richardson_extrapolate(&xs, &ys).unwrap();
        assert!((l - 1.0).abs() < 1e-6);
        assert!(e < 1e-6);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(richardson_extrapolate(&[0.5, 0.5, 0.25], &[1.0, 1.0, 1.0]).is_err());
        assert!(richardson_extrapolate(&[0.5, 0.25], &[1.0, 1.0]).is_err());
        assert!(richardson_extrapolate(&[0.25, 0.5, 0.125], &[1.0, 1.0, 1.0]).is_err());
        assert!(richardson_extrapolate(&[0.5, 0.25, 0.125], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn log_basis_removes_log_terms() {
        let xs: Vec<f64> = (3..=10).map(|j| 2f64.powi(-j)).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x| 1.5 + 0.7 * x * x.ln().powi(2) - 0.2 * x * x.ln() + x + 0.3 * x * x)
            .collect();
        let terms = ErrorTerm::log_series(2, 7);
        let (l, _) = extrapolate_with_basis(&xs, &ys, &terms).unwrap();
        assert!((l - 1.5).abs() < 1e-9, "{l}");
    }

    #[test]
    fn log_series_order() {
        let t = ErrorTerm::log_series(1, 5);
        assert_eq!(
            t,
            vec![
                ErrorTerm::new(1.0, 1),
                ErrorTerm::new(1.0, 0),
                ErrorTerm::new(2.0, 1),
                ErrorTerm::new(2.0, 0),
                ErrorTerm::new(3.0, 1)
            ]
        );
    }
}
