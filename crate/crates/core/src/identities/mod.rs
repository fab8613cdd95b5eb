//! Catalog of product/Lambert identities, a verifier with certified error
//! budgets, and a `q → 1` limit checker.

mod catalog;
mod euler;
mod exact;
mod limits;
mod report;
pub mod tables;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::ArithError;
use crate::numerics::NumericsError;
use crate::qseries::{FactorForm, Kernel, ProductForm, QSeriesError, Weight};

pub use catalog::{catalog, lookup};
pub use euler::{euler_product_log, EulerFactor};
pub use exact::ExactCheck;
pub use limits::{
    limit_all, limit_check, limit_record_check, limit_records, limit_targets, ErrorModel, EulerSum,
    LimitConfig, LimitGoal, LimitRecord, LimitTarget, TargetExpr, Verdict,
};
pub use report::{IdentityReport, LimitReport};
pub use tables::{fid, TableExpr};
pub use verify::{
    default_grid, tol_slack, verify, verify_all, verify_record, GridPoint, TableCache,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("unknown identity id {0:?}")]
    UnknownId(String),
    #[error("{id}: no limit target")]
    NoLimit { id: String },
    #[error("{id}: outside domain ({detail})")]
    Domain { id: String, detail: String },
    #[error("{id}: {side} side failed: {source}")]
    Evaluation {
        id: String,
        side: &'static str,
        #[source]
        source: QSeriesError,
    },
    #[error("{id}: extrapolation unstable (error estimate {err_estimate} above {limit_tol})")]
    Unstable {
        id: String,
        err_estimate: String,
        limit_tol: String,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
}

pub type Result<T, E = IdentityError> = std::result::Result<T, E>;

/// Closed-form summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `q`
    Q,
    /// `q / (1-q)`
    QOverOneMinusQ,
    /// `q / (1-q)²`
    QOverOneMinusQSquared,
    /// `q / (1-q²)`
    QOverOneMinusQ2,
    /// `q^z / (1 ∓ q)`
    QzKernel { kernel: Kernel },
}

/// One evaluator. Product-type terms evaluate to the logarithm of the product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "eval", rename_all = "snake_case")]
pub enum Term {
    /// `Σ f(n)/n^w · q^{nz}/(1 ∓ q^n)`
    Lambert {
        table: TableExpr,
        kernel: Kernel,
        weight: Weight,
    },
    /// `Σ g(n)/n^w · log P_n(q, z)` for the product forms.
    Product {
        table: TableExpr,
        form: ProductForm,
        weight: Weight,
    },
    /// `Σ g(n)/n^w · log F(q^n)`
    FactorLog {
        table: TableExpr,
        form: FactorForm,
        weight: Weight,
    },
    /// `Σ_n q^{n²z} / (n² (1 ∓ q^{n²}))`
    SquaresLambert {
        kernel: Kernel,
    },
    /// `Σ_{n|v} q^{nz} / (1 ∓ q^n)`
    DivisorLambert {
        v: u64,
        kernel: Kernel,
    },
    Closed {
        form: ClosedForm,
    },
}

/// `coef · term`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summand {
    pub coef: i64,
    pub term: Term,
}

pub type Side = Vec<Summand>;

pub fn plus(term: Term) -> Summand {
    Summand { coef: 1, term }
}

pub fn minus(term: Term) -> Summand {
    Summand { coef: -1, term }
}

/// Admissible `z` for a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZDomain {
    /// Any `z` with `Re z > 0`.
    Any,
    /// Neither side depends on `z`; evaluated at `z = 1`.
    Ignored,
}

/// One parameter choice of a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub params: String,
    pub lhs: Side,
    pub rhs: Side,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RecordKind {
    /// `lhs = rhs` at each `(q, z)`, both sides as sums of logs/series.
    Series {
        z: ZDomain,
        instances: Vec<Instance>,
    },
    /// Exact equalities of integer/rational tables on `1..=n_max`.
    Exact {
        n_max: usize,
        checks: Vec<ExactCheck>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    /// The display being checked, in LaTeX.
    pub formula: String,
    pub kind: RecordKind,
    /// Reading or orientation used when it differs from the literal display.
    pub note: Option<String>,
}

impl IdentityRecord {
    pub fn instance_count(&self) -> usize {
        match &self.kind {
            RecordKind::Series { instances, .. } => instances.len(),
            RecordKind::Exact { checks, .. } => checks.len(),
        }
    }
}
