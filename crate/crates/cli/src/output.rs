//! Report rendering. Numbers stay decimal strings throughout.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use lambertq::identities::{ErrorModel, IdentityReport, LimitReport};
use lambertq::numerics::Mpf;
use lambertq::qseries::SeriesValue;

use crate::Exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Serialize)]
struct ValueRow {
    value: String,
    err_bound: String,
    terms_used: u64,
}

#[derive(Serialize)]
struct LimitRow<'a> {
    id: &'a str,
    params: &'a str,
    q_grid: String,
    raw_values: String,
    estimate: Option<&'a str>,
    target_value: &'a str,
    rel_err: Option<&'a str>,
    err_estimate: Option<&'a str>,
    model: String,
    verdict: Option<String>,
    pass: bool,
    error: Option<&'a str>,
    note: Option<&'a str>,
}

fn model_name(m: ErrorModel) -> String {
    match m {
        ErrorModel::Analytic => "analytic".into(),
        ErrorModel::HalfPowers => "half_powers".into(),
        ErrorModel::LogPowers { log_order } => format!("log_powers:{log_order}"),
    }
}

fn fail(e: impl std::fmt::Display) -> Exit {
    Exit::new(1, e)
}

fn json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Exit> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(fail)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<R: Serialize>(
    out: &mut dyn Write,
    rows: impl IntoIterator<Item = R>,
) -> Result<(), Exit> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(fail)?;
    }
    w.flush()?;
    Ok(())
}

fn complex_str(v: &SeriesValue<Mpf>) -> String {
    use lambertq::numerics::Real;
    let re = v.value.re.to_decimal();
    if v.value.im == 0.0 {
        return re;
    }
    let im = v.value.im.to_decimal();
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{re}{sign}{im}i")
}

pub fn series_value(out: &mut dyn Write, format: Format, v: &SeriesValue<Mpf>) -> Result<(), Exit> {
    use lambertq::numerics::Real;
    let row = ValueRow {
        value: complex_str(v),
        err_bound: v.err_bound.to_decimal(),
        terms_used: v.terms_used,
    };
    match format {
        Format::Json => json(out, &row),
        Format::Csv => csv_rows(out, [row]),
        Format::Human => {
            writeln!(out, "value      {}", row.value)?;
            writeln!(out, "err_bound  {}", row.err_bound)?;
            writeln!(out, "terms_used {}", row.terms_used)?;
            Ok(())
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn identity_reports(
    out: &mut dyn Write,
    format: Format,
    reports: &[IdentityReport],
) -> Result<(), Exit> {
    match format {
        Format::Json => json(out, &reports),
        Format::Csv => csv_rows(out, reports),
        Format::Human => {
            for r in reports {
                let at = match (&r.q, &r.z) {
                    (Some(q), Some(z)) => format!(" q={q} z={z}"),
                    (Some(q), None) => format!(" q={q}"),
                    _ => String::new(),
                };
                write!(out, "{} {}", verdict(r.pass), r.id)?;
                if !r.params.is_empty() {
                    write!(out, " [{}]", r.params)?;
                }
                match &r.error {
                    Some(e) => writeln!(out, "{at} error: {e}")?,
                    None => writeln!(out, "{at} diff={} budget={}", r.abs_diff, r.error_budget)?,
                }
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} passed", reports.len())?;
            Ok(())
        }
    }
}

pub fn limit_reports(
    out: &mut dyn Write,
    format: Format,
    reports: &[LimitReport],
) -> Result<(), Exit> {
    match format {
        Format::Json => json(out, &reports),
        Format::Csv => csv_rows(
            out,
            reports.iter().map(|r| LimitRow {
                id: &r.id,
                params: &r.params,
                q_grid: r.q_grid.join(";"),
                raw_values: r.raw_values.join(";"),
                estimate: r.estimate.as_deref(),
                target_value: &r.target_value,
                rel_err: r.rel_err.as_deref(),
                err_estimate: r.err_estimate.as_deref(),
                model: model_name(r.model),
                verdict: r.verdict.map(|v| format!("{v:?}")),
                pass: r.pass,
                error: r.error.as_deref(),
                note: r.note.as_deref(),
            }),
        ),
        Format::Human => {
            for r in reports {
                write!(out, "{} {}", verdict(r.pass), r.id)?;
                if !r.params.is_empty() {
                    write!(out, " [{}]", r.params)?;
                }
                match (&r.estimate, &r.verdict, &r.error) {
                    (_, _, Some(e)) if r.estimate.is_none() => writeln!(out, " error: {e}")?,
                    (Some(est), _, _) => writeln!(
                        out,
                        " estimate={est} target={} rel_err={} err_estimate={}",
                        r.target_value,
                        r.rel_err.as_deref().unwrap_or("-"),
                        r.err_estimate.as_deref().unwrap_or("-"),
                    )?,
                    (None, v, _) => writeln!(
                        out,
                        " observed={} expected={}",
                        v.map_or("none".to_string(), |v| format!("{v:?}")),
                        r.target_value
                    )?,
                }
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} passed", reports.len())?;
            Ok(())
        }
    }
}
