//! The identity records.

use std::sync::OnceLock;

use crate::arith::{FunctionId, Growth};
use crate::qseries::{FactorForm, Kernel, ProductForm, Weight};

use super::tables::{fid, TableExpr};
use super::{
    minus, plus, ClosedForm, ExactCheck, IdentityError, IdentityRecord, Instance, RecordKind,
    Result, Summand, Term, ZDomain,
};

fn n_pow(e: f64) -> TableExpr {
    fid("one").scaled(1, 1, e)
}

fn product(table: TableExpr, form: ProductForm, weight: Weight) -> Term {
    Term::Product {
        table,
        form,
        weight,
    }
}

fn lambert(table: TableExpr, kernel: Kernel, weight: Weight) -> Term {
    Term::Lambert {
        table,
        kernel,
        weight,
    }
}

fn closed(form: ClosedForm) -> Term {
    Term::Closed { form }
}

fn series(
    id: &str,
    formula: &str,
    z: ZDomain,
    instances: Vec<Instance>,
    note: Option<&str>,
) -> IdentityRecord {
    IdentityRecord {
        id: id.to_string(),
        formula: formula.to_string(),
        kind: RecordKind::Series { z, instances },
        note: note.map(str::to_string),
    }
}

fn single(lhs: Vec<Summand>, rhs: Vec<Summand>) -> Vec<Instance> {
    vec![Instance {
        params: String::new(),
        lhs,
        rhs,
    }]
}

/// Parameter label, exponent table `g` and Lambert table `f = 1*g`.
type Family = Vec<(String, TableExpr, TableExpr)>;

fn fixed(g: TableExpr, f: TableExpr) -> Family {
    vec![(String::new(), g, f)]
}

/// `Σ g/n^w log(q^{nz};q^n) = -Σ f/n^w q^{nz}/(1-q^n)`
fn form_a(fam: &Family, weight: Weight) -> Vec<Instance> {
    fam.iter()
        .map(|(p, g, f)| Instance {
            params: p.clone(),
            lhs: vec![plus(product(g.clone(), ProductForm::FormA, weight))],
            rhs: vec![minus(lambert(f.clone(), Kernel::Minus, weight))],
        })
        .collect()
}

/// `Σ g/n^w log[(q^{n(z+1)};q^{2n})/(q^{nz};q^{2n})] = Σ f/n^w q^{nz}/(1+q^n)`
fn form_b(fam: &Family, weight: Weight) -> Vec<Instance> {
    fam.iter()
        .map(|(p, g, f)| Instance {
            params: p.clone(),
            lhs: vec![plus(product(g.clone(), ProductForm::FormB, weight))],
            rhs: vec![plus(lambert(f.clone(), Kernel::Plus, weight))],
        })
        .collect()
}

/// The odd/even pair `EQ3.{a}`, `EQ3.{a+1}` sharing one family.
fn pair(
    out: &mut Vec<IdentityRecord>,
    a: u32,
    formulas: [&str; 2],
    fam: Family,
    note: Option<&str>,
) {
    out.push(series(
        &format!("EQ3.{a}"),
        formulas[0],
        ZDomain::Any,
        form_a(&fam, Weight::OverN),
        note,
    ));
    out.push(series(
        &format!("EQ3.{}", a + 1),
        formulas[1],
        ZDomain::Any,
        form_b(&fam, Weight::OverN),
        note,
    ));
}

fn intro(out: &mut Vec<IdentityRecord>) {
    out.push(series(
        "INTRO-1",
        r"\sum_{n=1}^{\infty}\frac{\mu(n)q^{n}}{1-q^{n}}=q",
        ZDomain::Ignored,
        single(
            vec![plus(lambert(fid("mobius"), Kernel::Minus, Weight::Plain))],
            vec![plus(closed(ClosedForm::Q))],
        ),
        None,
    ));
    out.push(series(
        "INTRO-2",
        r"\sum_{n=1}^{\infty}\frac{\varphi(n)q^{n}}{1-q^{n}}=\frac{q}{(1-q)^{2}}",
        ZDomain::Ignored,
        single(
            vec![plus(lambert(fid("totient"), Kernel::Minus, Weight::Plain))],
            vec![plus(closed(ClosedForm::QOverOneMinusQSquared))],
        ),
        None,
    ));
    out.push(series(
        "INTRO-3",
        r"\prod_{n=1}^{\infty}\left(1-q^{n}\right)^{\varphi(n)/n}=\exp\left(-\frac{q}{1-q}\right)",
        ZDomain::Ignored,
        single(
            vec![plus(Term::FactorLog {
                table: fid("totient"),
                form: FactorForm::OneMinus,
                weight: Weight::OverN,
            })],
            vec![minus(closed(ClosedForm::QOverOneMinusQ))],
        ),
        None,
    ));
    out.push(series(
        "INTRO-4",
        r"\prod_{n=0}^{\infty}\left(\frac{1+q^{2n+1}}{1-q^{2n+1}}\right)^{\varphi(2n+1)/(2n+1)}=\exp\left(\frac{2q}{1-q^{2}}\right)",
        ZDomain::Ignored,
        single(
            vec![plus(Term::FactorLog {
                table: fid("totient").times(TableExpr::Periodic { values: vec![1, 0] }),
                form: FactorForm::PlusOverMinus,
                weight: Weight::OverN,
            })],
            vec![Summand {
                coef: 2,
                term: closed(ClosedForm::QOverOneMinusQ2),
            }],
        ),
        None,
    ));
}

fn section2(out: &mut Vec<IdentityRecord>) {
    let thm: Family = ["omega", "liouville"]
        .iter()
        .map(|g| (format!("g={g}"), fid(g), fid(g).summatory()))
        .collect();
    out.push(series(
        "THM-2.2",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{g(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{f(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
        ZDomain::Any,
        form_a(&thm, Weight::OverN),
        None,
    ));
    out.push(series(
        "THM-2.3",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{g(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{f(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ZDomain::Any,
        form_b(&thm, Weight::OverN),
        Some("proof line read with m as the summation index of f(m)/m"),
    ));
    let g = fid("divisor_d");
    out.push(series(
        "EQ2.4",
        r"-\sum_{n=1}^{\infty}\frac{g(n)}{n}\log\left(q^{nz};q^{n}\right)_{\infty}=\sum_{n=1}^{\infty}\frac{f(n)}{n}\frac{q^{nz}}{1-q^{n}}",
        ZDomain::Any,
        vec![Instance {
            params: "g=divisor_d".into(),
            lhs: vec![minus(product(g.clone(), ProductForm::FormA, Weight::OverN))],
            rhs: vec![plus(lambert(g.summatory(), Kernel::Minus, Weight::OverN))],
        }],
        None,
    ));
    let exact = |id: &str, formula: &str, checks: Vec<ExactCheck>| IdentityRecord {
        id: id.to_string(),
        formula: formula.to_string(),
        kind: RecordKind::Exact { n_max: 200, checks },
        note: None,
    };
    out.push(exact(
        "EQ2.6",
        r"nh(n)=\sum_{d\vert n}dg(d)\varphi\left(\frac{n}{d}\right)=\sum_{k=1}^{n}\gcd(n,k)g\left(\gcd(n,k)\right)",
        [FunctionId::One, FunctionId::Mobius, FunctionId::Totient, FunctionId::Liouville]
            .into_iter()
            .map(|g| ExactCheck::HTriple { g })
            .collect(),
    ));
    let cor: Family = ["totient", "one"]
        .iter()
        .map(|g| {
            (
                format!("g={g}"),
                TableExpr::HTransform {
                    inner: Box::new(fid(g).summatory()),
                },
                fid(g).summatory(),
            )
        })
        .collect();
    out.push(series(
        "COR-2.7",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{h(n)}=\exp\left(-\sum_{m=1}^{\infty}\frac{f(m)q^{mz}}{1-q^{m}}\right)",
        ZDomain::Any,
        form_a(&cor, Weight::Plain),
        None,
    ));
    out.push(series(
        "COR-2.8",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{h(n)}=\exp\left(\sum_{m=1}^{\infty}\frac{f(m)q^{mz}}{1+q^{m}}\right)",
        ZDomain::Any,
        form_b(&cor, Weight::Plain),
        None,
    ));
    let rem: Family = ["mobius", "totient"]
        .iter()
        .map(|g| {
            (
                format!("g={g}"),
                TableExpr::GcdSum {
                    inner: Box::new(fid(g)),
                },
                fid(g).summatory(),
            )
        })
        .collect();
    out.push(series(
        "REM-2.9",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\sum_{k=1}^{n}\gcd(n,k)g\left(\gcd(n,k)\right)/n}=\exp\left(-\sum_{m=1}^{\infty}\frac{\left(\sum_{d\vert m}g(d)\right)q^{mz}}{1-q^{m}}\right)",
        ZDomain::Any,
        form_a(&rem, Weight::Plain),
        None,
    ));
    out.push(series(
        "REM-2.10",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\sum_{k=1}^{n}\gcd(n,k)g\left(\gcd(n,k)\right)/n}=\exp\left(\sum_{m=1}^{\infty}\frac{\left(\sum_{d\vert m}g(d)\right)q^{mz}}{1+q^{m}}\right)",
        ZDomain::Any,
        form_b(&rem, Weight::Plain),
        None,
    ));
    out.push(exact(
        "EQ2.11",
        r"\sum_{d\vert n}df(d)\mu\left(\frac{n}{d}\right)=\sum_{d\vert n}dg(d)\varphi\left(\frac{n}{d}\right)=\sum_{k=1}^{n}\gcd(n,k)g\left(\gcd(n,k)\right)",
        [FunctionId::DivisorD, FunctionId::Sigma(1.0), FunctionId::R2]
            .into_iter()
            .map(|g| ExactCheck::DivisorTriple { g })
            .collect(),
    ));
    out.push(exact(
        "EQ2.12",
        r"J_{\alpha+1}(n)=\sum_{k=1}^{n}\gcd(n,k)J_{\alpha}\left(\gcd(n,k)\right)",
        (1..=3)
            .map(|alpha| ExactCheck::JordanGcd { alpha })
            .collect(),
    ));
    // f(p) = 1/p and f(p) = p²
    let kp: Family = [(-1.0, Growth::new(1.0, 0.0)), (2.0, Growth::new(1.0, 2.0))]
        .into_iter()
        .map(|(e, growth)| {
            (
                format!("f=n^{e}"),
                fid("mobius").times(n_pow(e)),
                TableExpr::KernelProduct {
                    inner: Box::new(n_pow(e)),
                    growth,
                },
            )
        })
        .collect();
    out.push(series(
        "REM-2.13",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu(n)f(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{\prod_{p\vert n}\left(1-f(p)\right)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
        ZDomain::Any,
        form_a(&kp, Weight::OverN),
        None,
    ));
    out.push(series(
        "REM-2.14",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu(n)f(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{\prod_{p\vert n}\left(1-f(p)\right)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ZDomain::Any,
        form_b(&kp, Weight::OverN),
        None,
    ));
}

fn section3(out: &mut Vec<IdentityRecord>) {
    let mu = fid("mobius");
    out.push(series(
        "EQ3.1",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu(n)/n}=\exp\left(-\frac{q^{z}}{1-q}\right)",
        ZDomain::Any,
        single(
            vec![plus(product(mu.clone(), ProductForm::FormA, Weight::OverN))],
            vec![minus(closed(ClosedForm::QzKernel { kernel: Kernel::Minus }))],
        ),
        None,
    ));
    out.push(series(
        "EQ3.2",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu(n)/n}=\exp\left(\frac{q^{z}}{1+q}\right)",
        ZDomain::Any,
        single(
            vec![plus(product(mu.clone(), ProductForm::FormB, Weight::OverN))],
            vec![plus(closed(ClosedForm::QzKernel { kernel: Kernel::Plus }))],
        ),
        None,
    ));
    pair(
        out,
        3,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{2^{\omega(n)}\mu(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{\left(-1\right)^{\omega(n)}}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{2^{\omega(n)}\mu(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{\left(-1\right)^{\omega(n)}}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(
            fid("two_pow_omega").times(mu.clone()),
            fid("neg_one_pow_omega"),
        ),
        None,
    );
    pair(
        out,
        5,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\left|\mu(n)\right|/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{2^{\omega(n)}}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\left|\mu(n)\right|/n}=\exp\left(\sum_{n=1}^{\infty}\frac{2^{\omega(n)}}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(fid("mobius_abs"), fid("two_pow_omega")),
        None,
    );
    pair(
        out,
        7,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\Lambda(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{\log(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\Lambda(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{\log(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(fid("mangoldt"), TableExpr::LogN),
        None,
    );
    pair(
        out,
        9,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu(n)\log n/n}=\exp\left(\sum_{n=1}^{\infty}\frac{\Lambda(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu(n)\log n/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{\Lambda(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(
            mu.clone().times(TableExpr::LogN),
            fid("mangoldt").scaled(-1, 1, 0.0),
        ),
        None,
    );
    pair(
        out,
        11,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\varphi(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\varphi(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(fid("totient"), n_pow(1.0)),
        None,
    );
    pair(
        out,
        13,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu(n)/n^{2}}=\exp\left(-\sum_{n=1}^{\infty}\frac{\varphi(n)}{n^{2}}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu(n)/n^{2}}=\exp\left(\sum_{n=1}^{\infty}\frac{\varphi(n)}{n^{2}}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(
            mu.clone().scaled(1, 1, -1.0),
            fid("totient").scaled(1, 1, -1.0),
        ),
        None,
    );
    pair(
        out,
        15,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu^{2}(n)/(n\varphi(n))}=\exp\left(-\sum_{n=1}^{\infty}\frac{1}{\varphi(n)}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu^{2}(n)/(n\varphi(n))}=\exp\left(\sum_{n=1}^{\infty}\frac{1}{\varphi(n)}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(
            fid("mobius_abs").over(fid("totient"), Growth::new(1.0, 0.0)),
            // n/φ(n) ≤ 2^ω(n) ≤ d(n) ≤ 2√n
            n_pow(1.0).over(fid("totient"), Growth::new(2.0, 0.5)),
        ),
        None,
    );
    let jordan: Family = (1..=3)
        .map(|k| {
            (
                format!("k={k}"),
                fid(&format!("jordan:{k}")),
                n_pow(k as f64),
            )
        })
        .collect();
    pair(
        out,
        17,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{J_{k}(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{n^{k-1}q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{J_{k}(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{n^{k-1}q^{nz}}{1+q^{n}}\right)",
        ],
        jordan,
        None,
    );
    let mu_k: Family = (1..=3)
        .map(|k| {
            let kf = k as f64;
            (
                format!("k={k}"),
                mu.clone().scaled(1, 1, -kf),
                fid(&format!("jordan:{k}")).scaled(1, 1, -kf),
            )
        })
        .collect();
    pair(
        out,
        19,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu(n)/n^{k+1}}=\exp\left(-\sum_{n=1}^{\infty}\frac{J_{k}(n)}{n^{k+1}}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu(n)/n^{k+1}}=\exp\left(\sum_{n=1}^{\infty}\frac{J_{k}(n)}{n^{k+1}}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        mu_k,
        None,
    );
    let abs_mu_k: Family = (1..=3)
        .map(|k| {
            let kf = k as f64;
            (
                format!("k={k}"),
                fid("mobius_abs").scaled(1, 1, -kf),
                // Σ_{d|n} |μ(d)|/d^k ≤ d(n) ≤ 2√n
                fid(&format!("jordan:{}", 2 * k)).over(
                    fid(&format!("jordan:{k}")).scaled(1, 1, kf),
                    Growth::new(2.0, 0.5),
                ),
            )
        })
        .collect();
    pair(
        out,
        21,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{|\mu(d)|/n^{k+1}}=\exp\left(-\sum_{n=1}^{\infty}\frac{J_{2k}(n)}{n^{k+1}J_{k}(n)}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{|\mu(d)|/n^{k+1}}=\exp\left(\sum_{n=1}^{\infty}\frac{J_{2k}(n)}{n^{k+1}J_{k}(n)}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        abs_mu_k,
        Some("exponent |mu(d)| read as |mu(n)|"),
    );
    pair(
        out,
        23,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{2^{\omega(n)}/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{d(n^{2})}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{2^{\omega(n)}/n}=\exp\left(\sum_{n=1}^{\infty}\frac{d(n^{2})}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(fid("two_pow_omega"), fid("divisor_d_sq")),
        None,
    );
    pair(
        out,
        25,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{d(n^{2})/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{d^{2}(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{d(n^{2})/n}=\exp\left(\sum_{n=1}^{\infty}\frac{d^{2}(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(
            fid("divisor_d_sq"),
            fid("divisor_d").times(fid("divisor_d")),
        ),
        None,
    );
    let sigma: Family = [-1.0, 0.5]
        .iter()
        .map(|&s| (format!("s={s}"), n_pow(s), fid(&format!("sigma:{s}"))))
        .collect();
    pair(
        out,
        27,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{n^{s-1}}=\exp\left(-\sum_{n=1}^{\infty}\frac{\sigma_{s}(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{n^{s-1}}=\exp\left(\sum_{n=1}^{\infty}\frac{\sigma_{s}(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        sigma,
        None,
    );
    let lambda = fid("liouville");
    out.push(series(
        "EQ3.29",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\lambda(n)/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{q^{n^{2}z}}{n^{2}\left(1-q^{n^{2}}\right)}\right)",
        ZDomain::Any,
        single(
            vec![plus(product(lambda.clone(), ProductForm::FormA, Weight::OverN))],
            vec![minus(Term::SquaresLambert { kernel: Kernel::Minus })],
        ),
        None,
    ));
    out.push(series(
        "EQ3.30",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\lambda(n)/n}=\exp\left(\sum_{n=1}^{\infty}\frac{q^{n^{2}z}}{n^{2}\left(1+q^{n^{2}}\right)}\right)",
        ZDomain::Any,
        single(
            vec![plus(product(lambda, ProductForm::FormB, Weight::OverN))],
            vec![plus(Term::SquaresLambert { kernel: Kernel::Plus })],
        ),
        None,
    ));
    let vs = [1u64, 4, 6, 12];
    let ram = |form: ProductForm, kernel: Kernel, coef: i64| -> Vec<Instance> {
        vs.iter()
            .map(|&v| Instance {
                params: format!("v={v}"),
                lhs: vec![plus(product(
                    fid(&format!("ramanujan:{v}")),
                    form,
                    Weight::OverN,
                ))],
                rhs: vec![Summand {
                    coef,
                    term: Term::DivisorLambert { v, kernel },
                }],
            })
            .collect()
    };
    out.push(series(
        "EQ3.31",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{c_{n}(v)/n}=\exp\left(-\sum_{n\vert v}\frac{q^{nz}}{1-q^{n}}\right)",
        ZDomain::Any,
        ram(ProductForm::FormA, Kernel::Minus, -1),
        None,
    ));
    out.push(series(
        "EQ3.32",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{c_{n}(v)/n}=\exp\left(\sum_{n\vert v}\frac{q^{nz}}{1+q^{n}}\right)",
        ZDomain::Any,
        ram(ProductForm::FormB, Kernel::Plus, 1),
        None,
    ));
    let chi = fid("chi1");
    out.push(series(
        "EQ3.33",
        r"\prod_{k=1}^{\infty}\frac{\left(q^{(4k-1)z};q^{4k-1}\right)_{\infty}^{4/(4k-1)}}{\left(q^{(4k-3)z};q^{4k-3}\right)_{\infty}^{4/(4k-3)}}=\exp\left(\sum_{n=1}^{\infty}\frac{r_{2}(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
        ZDomain::Any,
        form_a(&fixed(chi.clone().scaled(-4, 1, 0.0), fid("r2").scaled(-1, 1, 0.0)), Weight::OverN),
        Some("printed orientation: exponent table g = -4 chi1 in the (q^{nz};q^n) product, giving exp(+sum r2 ...)"),
    ));
    out.push(series(
        "EQ3.34",
        r"\prod_{k=1}^{\infty}\frac{\left(q^{(4k-1)z};q^{8k-2}\right)_{\infty}^{\frac{4}{4k-1}}\left(q^{(4k-3)(z+1)};q^{8k-6}\right)_{\infty}^{\frac{4}{4k-3}}}{\left(q^{(4k-1)(z+1)};q^{8k-2}\right)_{\infty}^{\frac{4}{4k-1}}\left(q^{(4k-3)z};q^{8k-6}\right)_{\infty}^{\frac{4}{4k-3}}}=\exp\left(\sum_{n=1}^{\infty}\frac{r_{2}(n)q^{nz}}{n(1+q^{n})}\right)",
        ZDomain::Any,
        form_b(&fixed(chi.scaled(4, 1, 0.0), fid("r2")), Weight::OverN),
        Some("printed orientation: exponent table g = +4 chi1 in the ratio product"),
    ));
    let not_div4 = n_pow(1.0).times(TableExpr::Periodic {
        values: vec![1, 1, 1, 0],
    });
    pair(
        out,
        35,
        [
            r"\exp\left(-\sum_{n=1}^{\infty}\frac{r_{4}(n)}{8n}\frac{q^{nz}}{1-q^{n}}\right)=\prod_{k=1}^{\infty}\left(q^{(4k-3)z};q^{4k-3}\right)_{\infty}\left(q^{(4k-2)z};q^{4k-2}\right)_{\infty}\left(q^{(4k-1)z};q^{4k-1}\right)_{\infty}",
            r"\exp\left(\sum_{n=1}^{\infty}\frac{r_{4}(n)}{8n}\frac{q^{nz}}{1+q^{n}}\right)=\prod_{k=1}^{\infty}\frac{\left(q^{(4k-1)(z+1)};q^{8k-2}\right)_{\infty}}{\left(q^{(4k-1)z};q^{8k-2}\right)_{\infty}}\frac{\left(q^{(4k-2)(z+1)};q^{8k-4}\right)_{\infty}}{\left(q^{(4k-2)z};q^{8k-4}\right)_{\infty}}\frac{\left(q^{(4k-3)(z+1)};q^{8k-6}\right)_{\infty}}{\left(q^{(4k-3)z};q^{8k-6}\right)_{\infty}}",
        ],
        fixed(not_div4, fid("r4").scaled(1, 8, 0.0)),
        None,
    );
    let odd = n_pow(1.0).times(TableExpr::Periodic { values: vec![1, 0] });
    // r4/(8(2+(-1)^n)) = Σ_{d|n, d odd} d ≤ σ(n) ≤ 2 n^{3/2}
    let r4_odd = fid("r4").scaled(1, 8, 0.0).over(
        TableExpr::Periodic { values: vec![1, 3] },
        Growth::new(2.0, 1.5),
    );
    pair(
        out,
        37,
        [
            r"\prod_{k=1}^{\infty}\left(q^{(2k-1)z};q^{2k-1}\right)_{\infty}=\exp\left(-\sum_{n=1}^{\infty}\frac{r_{4}(n)}{8n(2+(-1)^{n})}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{k=1}^{\infty}\frac{\left(q^{(2k-1)(z+1)};q^{4k-2}\right)_{\infty}}{\left(q^{(2k-1)z};q^{4k-2}\right)_{\infty}}=\exp\left(\sum_{n=1}^{\infty}\frac{r_{4}(n)}{8n(2+(-1)^{n})}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(odd, r4_odd),
        None,
    );
    pair(
        out,
        39,
        [
            r"\prod_{n=1}^{\infty}\frac{\left(q^{(2n-1)z};q^{2n-1}\right)_{\infty}^{(2n-1)^{2}}}{\left(q^{2nz};q^{2n}\right)_{\infty}^{4n^{2}}}=\exp\left(-\sum_{n=1}^{\infty}\frac{r_{8}(n)}{n}\frac{(-1)^{n}q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\frac{\left(q^{2n(z+1)};q^{4n}\right)_{\infty}^{4n^{2}}\left(q^{(2n-1)z};q^{4n-2}\right)_{\infty}^{(2n-1)^{2}}}{\left(q^{2nz};q^{4n}\right)_{\infty}^{4n^{2}}\left(q^{(2n-1)(z+1)};q^{4n-2}\right)_{\infty}^{(2n-1)^{2}}}=\exp\left(\sum_{n=1}^{\infty}\frac{r_{8}(n)}{n}\frac{(-1)^{n}q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(n_pow(3.0).alternate(), fid("r8").scaled(1, 16, 0.0).alternate()),
        Some("exponent table g(m) = (-1)^m m^3 and Lambert coefficients (-1)^n r8(n)/16; the first display is used with its product inverted"),
    );
    pair(
        out,
        41,
        [
            r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\varphi(n)\left|\mu(n)\right|/n}=\exp\left(-\sum_{n=1}^{\infty}\frac{\gamma(n)}{n}\frac{q^{nz}}{1-q^{n}}\right)",
            r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\varphi(n)\left|\mu(n)\right|/n}=\exp\left(\sum_{n=1}^{\infty}\frac{\gamma(n)}{n}\frac{q^{nz}}{1+q^{n}}\right)",
        ],
        fixed(fid("phi_abs_mu"), fid("core_gamma")),
        None,
    );
    let mu_root = |kernel: Kernel, form: ProductForm, sign: i64| -> Vec<Instance> {
        (1..=3u32)
            .map(|k| Instance {
                params: format!("k={k}"),
                lhs: vec![plus(product(
                    fid(&format!("mu_k:{k}")),
                    form,
                    Weight::OverN,
                ))],
                rhs: vec![
                    Summand {
                        coef: sign,
                        term: closed(ClosedForm::QzKernel { kernel }),
                    },
                    Summand {
                        coef: sign,
                        term: lambert(TableExpr::RootPowOmega { k }.from(2), kernel, Weight::OverN),
                    },
                ],
            })
            .collect()
    };
    out.push(series(
        "EQ3.43",
        r"\prod_{n=1}^{\infty}\left(q^{nz};q^{n}\right)_{\infty}^{\mu_{k}(n)/n}=\exp\left(-\frac{q^{z}}{1-q}-\sum_{n=2}^{\infty}\frac{\left(1+e^{\pi i/k}\right)^{\omega(n)}q^{nz}}{n\left(1-q^{n}\right)}\right)",
        ZDomain::Any,
        mu_root(Kernel::Minus, ProductForm::FormA, -1),
        None,
    ));
    out.push(series(
        "EQ3.44",
        r"\prod_{n=1}^{\infty}\left(\frac{\left(q^{n(z+1)};q^{2n}\right)_{\infty}}{\left(q^{nz};q^{2n}\right)_{\infty}}\right)^{\mu_{k}(n)/n}=\exp\left(\frac{q^{z}}{1+q}+\sum_{n=2}^{\infty}\frac{\left(1+e^{\pi i/k}\right)^{\omega(n)}q^{nz}}{n\left(1+q^{n}\right)}\right)",
        ZDomain::Any,
        mu_root(Kernel::Plus, ProductForm::FormB, 1),
        None,
    ));
}

fn build() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    intro(&mut out);
    section2(&mut out);
    section3(&mut out);
    out
}

/// Every record, ordered by section and equation number.
pub fn catalog() -> &'static [IdentityRecord] {
    static CATALOG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn lookup(id: &str) -> Result<IdentityRecord> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .cloned()
        .ok_or_else(|| IdentityError::UnknownId(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_unique_and_complete() {
        let cat = catalog();
        assert!(cat.len() >= 40);
        let ids: HashSet<_> = cat.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len());
        for n in 1..=44 {
            assert!(ids.contains(format!("EQ3.{n}").as_str()), "EQ3.{n}");
        }
        for id in [
            "INTRO-1", "INTRO-4", "THM-2.2", "THM-2.3", "COR-2.7", "COR-2.8", "REM-2.9",
            "REM-2.14", "EQ2.12",
        ] {
            assert!(ids.contains(id), "{id}");
        }
    }

    #[test]
    fn lookup_examples() {
        let r = lookup("EQ3.11").unwrap();
        let RecordKind::Series { instances, .. } = &r.kind else {
            panic!()
        };
        assert_eq!(
            instances[0].lhs[0].term,
            product(fid("totient"), ProductForm::FormA, Weight::OverN)
        );
        assert_eq!(
            instances[0].rhs[0].term,
            lambert(n_pow(1.0), Kernel::Minus, Weight::OverN)
        );
        assert!(matches!(
            lookup("EQ2.12").unwrap().kind,
            RecordKind::Exact { .. }
        ));
        assert_eq!(
            lookup("NOPE").unwrap_err(),
            IdentityError::UnknownId("NOPE".into())
        );
    }

    #[test]
    fn tables_build_for_every_record() {
        for rec in catalog() {
            if let RecordKind::Series { instances, .. } = &rec.kind {
                for inst in instances {
                    for s in inst.lhs.iter().chain(&inst.rhs) {
                        let t = match &s.term {
                            Term::Lambert { table, .. }
                            | Term::Product { table, .. }
                            | Term::FactorLog { table, .. } => table,
                            _ => continue,
                        };
                        let built = t
                            .build::<f64>(300)
                            .unwrap_or_else(|e| panic!("{} {}: {e}", rec.id, inst.params));
                        assert_eq!(
                            built.growth_violation(),
                            None,
                            "{} {} {t}",
                            rec.id,
                            inst.params
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn records_round_trip_json() {
        let s = serde_json::to_string(catalog()).unwrap();
        let back: Vec<IdentityRecord> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, catalog());
    }
}
