//! `lambertq`: sieve arithmetic functions, evaluate q-series, verify identities
//! and check `q → 1` limits.

mod output;

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use lambertq::arith::{build_table, ArithError, FunctionId};
use lambertq::identities::{
    default_grid, fid, limit_all, limit_check, lookup, verify, verify_all, verify_record,
    GridPoint, IdentityError, LimitConfig, TableCache,
};
use lambertq::numerics::{Mpf, NumericsError, Precision, Real, DEFAULT_BITS};
use lambertq::qseries::{
    dedekind_eta, lambert_sum, qpoch_inf, qpoch_n, weighted_product_log, EvalConfig, Kernel,
    KernelForm, ProductForm, QPoint, QSeriesError, Weight,
};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "lambertq",
    version,
    about = "Lambert series and q-product identity checker"
)]
struct Cli {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, env = "LAMBERTQ_PRECISION_BITS", default_value_t = DEFAULT_BITS)]
    precision_bits: u32,
    /// Absolute truncation tolerance.
    #[arg(long, global = true, default_value = "1e-25")]
    tol: String,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write `n,value` rows of an arithmetic function as CSV.
    Sieve {
        /// Function spec, `name[:param]`.
        function: String,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one q-series primitive.
    Eval {
        #[command(subcommand)]
        expr: EvalExpr,
    },
    /// Check catalog identities; exit 0 iff every report passes.
    Verify {
        /// Identity id or `all`.
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Extrapolate `q → 1` limits; exit 0 iff every report passes.
    Limit {
        /// Limit id or `all`.
        id: String,
        #[arg(long, default_value_t = 1e-3)]
        limit_tol: f64,
    },
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeightArg {
    Plain,
    OverN,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KernelArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum EvalExpr {
    /// `Σ f(n)/n^w · q^{nz}/(1 ∓ q^n)`
    Lambert {
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = WeightArg::Plain)]
        weight: WeightArg,
        #[arg(long, value_enum, default_value_t = KernelArg::Minus)]
        kernel: KernelArg,
        #[command(flatten)]
        point: Point,
    },
    /// `exp Σ g(n)/n^w · log P_n(q, z)`
    Product {
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value_t = FormArg::A)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = WeightArg::OverN)]
        weight: WeightArg,
        #[command(flatten)]
        point: Point,
    },
    /// `(z;q)_∞`, or `(z;q)_n` with `--n`.
    Qpoch {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Dedekind `η(τ)`, `Im τ > 0`.
    Eta {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Exit {
    code: u8,
    msg: String,
}

impl Exit {
    fn new(code: u8, msg: impl fmt::Display) -> Self {
        Self {
            code,
            msg: msg.to_string(),
        }
    }

    fn usage(msg: impl fmt::Display) -> Self {
        Self::new(2, msg)
    }
}

impl From<ArithError> for Exit {
    fn from(e: ArithError) -> Self {
        let code = match e {
            ArithError::Overflow { .. } => 3,
            ArithError::OutOfRange { .. } => 4,
            _ => 2,
        };
        Self::new(code, e)
    }
}

impl From<NumericsError> for Exit {
    fn from(e: NumericsError) -> Self {
        let code = match e {
            NumericsError::Domain { .. } => 4,
            NumericsError::Overflow(..) => 3,
            _ => 5,
        };
        Self::new(code, e)
    }
}

impl From<QSeriesError> for Exit {
    fn from(e: QSeriesError) -> Self {
        let code = match &e {
            QSeriesError::Domain { .. } | QSeriesError::Pole(_) => 4,
            QSeriesError::Overflow(_) => 3,
            QSeriesError::Numerics(n) => return n.clone().into(),
            _ => 5,
        };
        Self::new(code, e)
    }
}

impl From<IdentityError> for Exit {
    fn from(e: IdentityError) -> Self {
        let code = match &e {
            IdentityError::UnknownId(_) | IdentityError::NoLimit { .. } => 2,
            IdentityError::Domain { .. } => 4,
            IdentityError::Evaluation { source, .. } => Exit::from(source.clone()).code,
            IdentityError::Unstable { .. } => 5,
            IdentityError::Arith(a) => Exit::from(a.clone()).code,
            IdentityError::Numerics(n) => Exit::from(n.clone()).code,
            IdentityError::QSeries(q) => Exit::from(q.clone()).code,
        };
        Self::new(code, e)
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Self::new(1, e)
    }
}

fn real(s: &str, what: &str) -> Result<Mpf, Exit> {
    Mpf::parse_decimal(s).ok_or_else(|| Exit::usage(format!("cannot parse {what} = {s:?}")))
}

/// `a`, `bi`, `a+bi` or `a-bi`.
fn complex(s: &str, what: &str) -> Result<Complex<Mpf>, Exit> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Exit::usage(format!("cannot parse {what} = {s:?}"));
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(real(&t, what)?, Mpf::from_int(0)));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im_part = match im_part {
        "" | "+" => "1",
        "-" => "-1",
        s => s,
    };
    let re = Mpf::parse_decimal(re_part).ok_or_else(err)?;
    let im = Mpf::parse_decimal(im_part.trim_start_matches('+')).ok_or_else(err)?;
    Ok(Complex::new(re, im))
}

fn point(q: &str, z: &str) -> Result<QPoint<Mpf>, Exit> {
    Ok(QPoint::new(real(q, "q")?, complex(z, "z")?)?)
}

fn weight(w: WeightArg) -> Weight {
    match w {
        WeightArg::Plain => Weight::Plain,
        WeightArg::OverN => Weight::OverN,
    }
}

fn eval(
    expr: &EvalExpr,
    cfg: &EvalConfig<Mpf>,
    out: &mut dyn Write,
    format: Format,
) -> Result<(), Exit> {
    let value = match expr {
        EvalExpr::Lambert {
            f,
            weight: w,
            kernel,
            point: p,
        } => {
            FunctionId::from_str(f)?;
            let kernel = match kernel {
                KernelArg::Minus => Kernel::Minus,
                KernelArg::Plus => Kernel::Plus,
            };
            let pt = point(&p.q, &p.z)?;
            TableCache::new().with_table(&fid(f), cfg.max_terms, |t| {
                lambert_sum(t, KernelForm::new(kernel, weight(*w)), &pt, cfg)
            })?
        }
        EvalExpr::Product {
            g,
            form,
            weight: w,
            point: p,
        } => {
            FunctionId::from_str(g)?;
            let form = match form {
                FormArg::A => ProductForm::FormA,
                FormArg::B => ProductForm::FormB,
            };
            let pt = point(&p.q, &p.z)?;
            TableCache::new()
                .with_table(&fid(g), cfg.max_terms, |t| {
                    weighted_product_log(t, &pt, form, weight(*w), cfg)
                })?
                .exp()?
        }
        EvalExpr::Qpoch { z, q, n } => {
            let (z, q) = (complex(z, "z")?, real(q, "q")?);
            match n {
                Some(n) => qpoch_n(&z, &q, &complex(n, "n")?, cfg)?,
                None => qpoch_inf(&z, &q, cfg)?,
            }
        }
        EvalExpr::Eta { tau } => dedekind_eta(&complex(tau, "tau")?, cfg)?,
    };
    output::series_value(out, format, &value)
}

fn sieve(function: &str, n: usize, path: Option<&PathBuf>) -> Result<(), Exit> {
    let id = FunctionId::from_str(function)?;
    let table = build_table::<Mpf>(&id, n)?;
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let io_err = |e: csv::Error| Exit::new(1, e);
    w.write_record(["n", "value"]).map_err(io_err)?;
    for k in 1..=n as u64 {
        w.write_record([k.to_string(), table.get(k)?.to_string()])
            .map_err(io_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Exit> {
    let tol = real(&cli.tol, "tol")?;
    if !tol.is_positive() {
        return Err(Exit::usage("tol must be positive"));
    }
    let cfg = EvalConfig {
        tol,
        max_terms: cli.max_terms,
    };
    let mut out = io::stdout().lock();
    match &cli.cmd {
        Command::Sieve {
            function,
            n,
            out: path,
        } => sieve(function, *n, path.as_ref()).map(|_| true),
        Command::Eval { expr } => eval(expr, &cfg, &mut out, cli.format).map(|_| true),
        Command::Verify { id, q, z } => {
            let z = z.as_deref().unwrap_or("1");
            let reports = match (id.as_str(), q) {
                ("all", None) => verify_all(&default_grid(), &cfg),
                ("all", Some(q)) => verify_all(
                    &[GridPoint {
                        q: real(q, "q")?,
                        z: complex(z, "z")?,
                    }],
                    &cfg,
                ),
                (id, None) => verify_record(&lookup(id)?, &default_grid(), &cfg),
                (id, Some(q)) => verify(id, &real(q, "q")?, &complex(z, "z")?, &cfg)?,
            };
            output::identity_reports(&mut out, cli.format, &reports)?;
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Limit { id, limit_tol } => {
            if !(*limit_tol > 0.0) {
                return Err(Exit::usage("limit-tol must be positive"));
            }
            let lcfg = LimitConfig::<Mpf> {
                limit_tol: *limit_tol,
                ..LimitConfig::default()
            };
            let reports = if id == "all" {
                limit_all(&lcfg)
            } else {
                vec![limit_check(id, &lcfg)?]
            };
            output::limit_reports(&mut out, cli.format, &reports)?;
            Ok(reports.iter().all(|r| r.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(prec) = Precision::new(cli.precision_bits) else {
        eprintln!(
            "error: precision_bits = {} is below the minimum of {}",
            cli.precision_bits,
            Precision::MIN_BITS
        );
        return ExitCode::from(2);
    };
    match prec.scope(|| run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex() {
        let c = |s: &str| {
            let z = complex(s, "z").unwrap();
            (z.re.approx_f64(), z.im.approx_f64())
        };
        assert_eq!(c("1"), (1.0, 0.0));
        assert_eq!(c("1+0.5i"), (1.0, 0.5));
        assert_eq!(c("-2-3i"), (-2.0, -3.0));
        assert_eq!(c("2i"), (0.0, 2.0));
        assert_eq!(c("i"), (0.0, 1.0));
        assert_eq!(c("1e-3-1e+2i"), (1e-3, -100.0));
        assert!(complex("1+xi", "z").is_err());
        assert!(complex("", "z").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Exit::from(IdentityError::UnknownId("x".into())).code, 2);
        let conv = QSeriesError::ConvergenceFailure {
            op: "x",
            needed: 2,
            max_terms: 1,
        };
        assert_eq!(Exit::from(conv).code, 5);
        assert_eq!(Exit::from(QSeriesError::Overflow("x")).code, 3);
        assert!(lambertq::identities::catalog().len() >= 40);
    }
}
