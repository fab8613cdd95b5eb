//! Evaluating both sides of a record and comparing them.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{ArithError, ArithTable};
use crate::numerics::complex::{abs, real_pow, scale};
use crate::numerics::{Precision, Real};
use crate::qseries::{
    lambert_sum, weighted_factor_log, weighted_product_log, EvalConfig, Kernel, KernelForm, QPoint,
    QSeriesError, SeriesValue,
};

use super::catalog::{catalog, lookup};
use super::report::{fmt_complex, fmt_real, IdentityReport};
use super::{
    ClosedForm, IdentityError, IdentityRecord, Instance, RecordKind, Result, Side, TableExpr, Term,
    ZDomain,
};

/// A `(q, z)` pair of the verification grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint<T> {
    pub q: T,
    pub z: Complex<T>,
}

/// `q ∈ {0.1, 0.3, 0.5, 0.7}` × `z ∈ {1, 2, 0.5, 1 + 0.5i}`.
pub fn default_grid<T: Real>() -> Vec<GridPoint<T>> {
    let zs = [(1.0, 0.0), (2.0, 0.0), (0.5, 0.0), (1.0, 0.5)];
    [1, 3, 5, 7]
        .iter()
        .flat_map(|&q| {
            zs.iter().map(move |&(a, b)| GridPoint {
                q: T::from_ratio(q, 10),
                z: Complex::new(T::lit(a), T::lit(b)),
            })
        })
        .collect()
}

/// Roundoff allowance added to the truncation budget.
pub fn tol_slack<T: Real>(lhs: &Complex<T>, rhs: &Complex<T>) -> T {
    T::epsilon() * T::lit(65536.0) * (T::one() + abs(lhs) + abs(rhs))
}

const INITIAL_LEN: usize = 64;

/// Tables built so far, keyed by recipe.
#[derive(Debug)]
pub struct TableCache<T> {
    tables: HashMap<String, ArithTable<T>>,
}

impl<T: Real> TableCache<T> {
    pub fn new() -> Self {
        Self {
            tables: HashMap::new(),
        }
    }

    fn get(
        &mut self,
        expr: &TableExpr,
        len: usize,
    ) -> std::result::Result<&ArithTable<T>, QSeriesError> {
        let key = expr.to_string();
        let have = self.tables.get(&key).map_or(0, ArithTable::len);
        if have < len {
            let table = expr
                .build::<T>(len.next_power_of_two())
                .map_err(|e| match e {
                    ArithError::Overflow { .. } => QSeriesError::Overflow("table"),
                    e => QSeriesError::Domain {
                        op: "table",
                        detail: e.to_string(),
                    },
                })?;
            self.tables.insert(key.clone(), table);
        }
        Ok(&self.tables[&key])
    }

    /// Runs `f` on the table for `expr`, growing it until it is long enough.
    pub fn with_table<R>(
        &mut self,
        expr: &TableExpr,
        max_terms: u64,
        mut f: impl FnMut(&ArithTable<T>) -> std::result::Result<R, QSeriesError>,
    ) -> std::result::Result<R, QSeriesError> {
        let mut len = self
            .tables
            .get(&expr.to_string())
            .map_or(INITIAL_LEN, ArithTable::len);
        loop {
            match f(self.get(expr, len)?) {
                Err(QSeriesError::TableTooShort { needed, .. }) => {
                    if needed as u64 > max_terms {
                        return Err(QSeriesError::ConvergenceFailure {
                            op: "table",
                            needed: needed as u64,
                            max_terms,
                        });
                    }
                    len = needed.max(2 * len);
                }
                other => return other,
            }
        }
    }
}

impl<T: Real> Default for TableCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn closed_value<T: Real>(form: ClosedForm, pt: &QPoint<T>) -> Complex<T> {
    let q = pt.q.clone();
    let one = T::one();
    let r = |x: T| Complex::new(x, T::zero());
    match form {
        ClosedForm::Q => r(q),
        ClosedForm::QOverOneMinusQ => r(q.clone() / (one - q)),
        ClosedForm::QOverOneMinusQSquared => {
            let d = one - q.clone();
            r(q / (d.clone() * d))
        }
        ClosedForm::QOverOneMinusQ2 => r(q.clone() / (one - q.clone() * q)),
        ClosedForm::QzKernel { kernel } => {
            let den = match kernel {
                Kernel::Minus => one - q.clone(),
                Kernel::Plus => one + q.clone(),
            };
            scale(&real_pow(&q, &pt.z), &(T::one() / den))
        }
    }
}

fn kernel_den<T: Real>(kernel: Kernel, x: T) -> T {
    match kernel {
        Kernel::Minus => T::one() - x,
        Kernel::Plus => T::one() + x,
    }
}

/// `Σ_n q^{n²z} / (n² (1 ∓ q^{n²}))`, tail `r^{(N+1)²} / ((N+1)² (1-q)(1-r))`, `r = q^{Re z}`.
fn squares_lambert<T: Real>(
    kernel: Kernel,
    pt: &QPoint<T>,
    cfg: &EvalConfig<T>,
) -> std::result::Result<SeriesValue<T>, QSeriesError> {
    let q = &pt.q;
    let r = q.powf(&pt.z.re);
    let denom = (T::one() - q.clone()) * (T::one() - r.clone());
    let mut sum = Complex::<T>::zero();
    let mut n = 0u64;
    loop {
        let m = T::from_u64((n + 1) * (n + 1)).unwrap();
        let bound = r.powf(&m) / (m.clone() * denom.clone());
        if bound <= cfg.tol {
            return Ok(SeriesValue {
                value: sum,
                err_bound: bound,
                terms_used: n,
            });
        }
        n += 1;
        if n > cfg.max_terms {
            return Err(QSeriesError::ConvergenceFailure {
                op: "squares_lambert",
                needed: n,
                max_terms: cfg.max_terms,
            });
        }
        let x = real_pow(q, &scale(&pt.z, &m));
        sum = sum
            + scale(
                &x,
                &(T::one() / (m.clone() * kernel_den(kernel, q.powf(&m)))),
            );
    }
}

/// `Σ_{n|v} q^{nz} / (1 ∓ q^n)`
fn divisor_lambert<T: Real>(v: u64, kernel: Kernel, pt: &QPoint<T>) -> SeriesValue<T> {
    let mut sum = Complex::<T>::zero();
    for n in (1..=v).filter(|n| v.is_multiple_of(*n)) {
        let nt = T::from_u64(n).unwrap();
        let x = real_pow(&pt.q, &scale(&pt.z, &nt));
        sum = sum + scale(&x, &(T::one() / kernel_den(kernel, pt.q.powf(&nt))));
    }
    SeriesValue {
        value: sum,
        err_bound: T::zero(),
        terms_used: v,
    }
}

pub(crate) fn eval_term<T: Real>(
    cache: &mut TableCache<T>,
    term: &Term,
    pt: &QPoint<T>,
    cfg: &EvalConfig<T>,
) -> std::result::Result<SeriesValue<T>, QSeriesError> {
    match term {
        Term::Lambert {
            table,
            kernel,
            weight,
        } => cache.with_table(table, cfg.max_terms, |t| {
            lambert_sum(t, KernelForm::new(*kernel, *weight), pt, cfg)
        }),
        Term::Product {
            table,
            form,
            weight,
        } => cache.with_table(table, cfg.max_terms, |t| {
            weighted_product_log(t, pt, *form, *weight, cfg)
        }),
        Term::FactorLog {
            table,
            form,
            weight,
        } => cache.with_table(table, cfg.max_terms, |t| {
            weighted_factor_log(t, &pt.q, *form, *weight, cfg)
        }),
        Term::SquaresLambert { kernel } => squares_lambert(*kernel, pt, cfg),
        Term::DivisorLambert { v, kernel } => Ok(divisor_lambert(*v, *kernel, pt)),
        Term::Closed { form } => Ok(SeriesValue::exact(closed_value(*form, pt))),
    }
}

pub(crate) fn eval_side<T: Real>(
    cache: &mut TableCache<T>,
    side: &Side,
    pt: &QPoint<T>,
    cfg: &EvalConfig<T>,
) -> std::result::Result<SeriesValue<T>, QSeriesError> {
    let share = EvalConfig {
        tol: cfg.tol.clone() / T::from_usize(side.len().max(1)).unwrap(),
        max_terms: cfg.max_terms,
    };
    let mut total = SeriesValue::exact(Complex::zero());
    for s in side {
        let v = eval_term(cache, &s.term, pt, &share)?;
        let c = T::from_i64(s.coef).unwrap();
        total.value = total.value + scale(&v.value, &c);
        total.err_bound = total.err_bound + v.err_bound * c.abs();
        total.terms_used += v.terms_used;
    }
    Ok(total)
}

fn instance_report<T: Real>(
    rec: &IdentityRecord,
    inst: &Instance,
    z_dom: ZDomain,
    pt: &QPoint<T>,
    cfg: &EvalConfig<T>,
    cache: &mut TableCache<T>,
) -> Result<IdentityReport> {
    let side_err = |side: &'static str| {
        let id = rec.id.clone();
        move |source| IdentityError::Evaluation { id, side, source }
    };
    let lhs = eval_side(cache, &inst.lhs, pt, cfg).map_err(side_err("lhs"))?;
    let rhs = eval_side(cache, &inst.rhs, pt, cfg).map_err(side_err("rhs"))?;
    let diff = abs(&(lhs.value.clone() - rhs.value.clone()));
    let budget = lhs.err_bound.clone() + rhs.err_bound.clone();
    let slack = tol_slack(&lhs.value, &rhs.value);
    Ok(IdentityReport {
        id: rec.id.clone(),
        params: inst.params.clone(),
        q: Some(fmt_real(&pt.q)),
        z: (z_dom == ZDomain::Any).then(|| fmt_complex(&pt.z)),
        lhs_value: fmt_complex(&lhs.value),
        rhs_value: fmt_complex(&rhs.value),
        pass: diff <= budget.clone() + slack.clone(),
        abs_diff: fmt_real(&diff),
        error_budget: fmt_real(&budget),
        tol_slack: fmt_real(&slack),
        terms_used: lhs.terms_used + rhs.terms_used,
        error: None,
        note: rec.note.clone(),
    })
}

fn exact_reports(
    rec: &IdentityRecord,
    n_max: usize,
    checks: &[super::ExactCheck],
) -> Result<Vec<IdentityReport>> {
    checks
        .iter()
        .map(|c| {
            let out = c.run(n_max)?;
            Ok(IdentityReport {
                id: rec.id.clone(),
                params: format!("{} n<={n_max}", out.params),
                q: None,
                z: None,
                lhs_value: out.first_sum.to_string(),
                rhs_value: out.last_sum.to_string(),
                abs_diff: out.mismatches.len().to_string(),
                error_budget: "0".into(),
                tol_slack: "0".into(),
                pass: out.mismatches.is_empty(),
                terms_used: n_max as u64,
                error: None,
                note: rec.note.clone(),
            })
        })
        .collect()
}

fn point<T: Real>(id: &str, q: &T, z: &Complex<T>, z_dom: ZDomain) -> Result<QPoint<T>> {
    let z = match z_dom {
        ZDomain::Any => z.clone(),
        ZDomain::Ignored => Complex::one(),
    };
    QPoint::new(q.clone(), z).map_err(|e| IdentityError::Domain {
        id: id.to_string(),
        detail: e.to_string(),
    })
}

/// Checks every parameter instance of `id` at `(q, z)`; one report per instance.
pub fn verify<T: Real>(
    id: &str,
    q: &T,
    z: &Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Vec<IdentityReport>> {
    let rec = lookup(id)?;
    match &rec.kind {
        RecordKind::Exact { n_max, checks } => exact_reports(&rec, *n_max, checks),
        RecordKind::Series {
            z: z_dom,
            instances,
        } => {
            let pt = point(id, q, z, *z_dom)?;
            let mut cache = TableCache::new();
            instances
                .iter()
                .map(|inst| instance_report(&rec, inst, *z_dom, &pt, cfg, &mut cache))
                .collect()
        }
    }
}

fn failed_report<T: Real>(
    rec: &IdentityRecord,
    params: &str,
    pt: Option<&GridPoint<T>>,
    err: &IdentityError,
) -> IdentityReport {
    IdentityReport {
        id: rec.id.clone(),
        params: params.to_string(),
        q: pt.map(|p| fmt_real(&p.q)),
        z: pt.map(|p| fmt_complex(&p.z)),
        lhs_value: String::new(),
        rhs_value: String::new(),
        abs_diff: String::new(),
        error_budget: String::new(),
        tol_slack: String::new(),
        pass: false,
        terms_used: 0,
        error: Some(err.to_string()),
        note: rec.note.clone(),
    }
}

/// All instances of one record over a grid. `z`-independent records are
/// evaluated once per distinct `q`; failures become failing reports.
pub fn verify_record<T: Real>(
    rec: &IdentityRecord,
    grid: &[GridPoint<T>],
    cfg: &EvalConfig<T>,
) -> Vec<IdentityReport> {
    match &rec.kind {
        RecordKind::Exact { n_max, checks } => exact_reports(rec, *n_max, checks)
            .unwrap_or_else(|e| vec![failed_report::<T>(rec, "", None, &e)]),
        RecordKind::Series {
            z: z_dom,
            instances,
        } => {
            let mut seen: Vec<&T> = Vec::new();
            let mut cache = TableCache::new();
            let mut out = Vec::new();
            for gp in grid {
                if *z_dom == ZDomain::Ignored {
                    if seen.contains(&&gp.q) {
                        continue;
                    }
                    seen.push(&gp.q);
                }
                let pt = match point(&rec.id, &gp.q, &gp.z, *z_dom) {
                    Ok(pt) => pt,
                    Err(_) => continue,
                };
                for inst in instances {
                    out.push(
                        instance_report(rec, inst, *z_dom, &pt, cfg, &mut cache)
                            .unwrap_or_else(|e| failed_report(rec, &inst.params, Some(gp), &e)),
                    );
                }
            }
            out
        }
    }
}

/// The whole catalog over a grid, in catalog order whatever the scheduling.
pub fn verify_all<T: Real>(grid: &[GridPoint<T>], cfg: &EvalConfig<T>) -> Vec<IdentityReport> {
    let prec = Precision::current();
    catalog()
        .par_iter()
        .map(|rec| prec.scope(|| verify_record(rec, grid, cfg)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Weight;

    #[test]
    fn grid_shape() {
        let g = default_grid::<f64>();
        assert_eq!(g.len(), 16);
        assert_eq!(g[3].z, Complex::new(1.0, 0.5));
    }

    #[test]
    fn squares_lambert_matches_direct() {
        let pt = QPoint::real(0.5f64, 1.0).unwrap();
        let cfg = EvalConfig::with_tol(1e-15);
        let v = squares_lambert(Kernel::Minus, &pt, &cfg).unwrap();
        let direct: f64 = (1..40)
            .map(|n: i32| {
                let m = n * n;
                0.5f64.powi(m) / (m as f64 * (1.0 - 0.5f64.powi(m)))
            })
            .sum();
        assert!((v.value.re - direct).abs() < 1e-15);
    }

    #[test]
    fn cache_grows_tables() {
        let mut cache = TableCache::<f64>::new();
        let pt = QPoint::real(0.9, 1.0).unwrap();
        let term = Term::Lambert {
            table: super::super::fid("mobius"),
            kernel: Kernel::Minus,
            weight: Weight::Plain,
        };
        let v = eval_term(&mut cache, &term, &pt, &EvalConfig::with_tol(1e-12)).unwrap();
        assert!((v.value.re - 0.9).abs() < 1e-11);
        assert!(cache.tables.values().next().unwrap().len() > INITIAL_LEN);
    }
}
