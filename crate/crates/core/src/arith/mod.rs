//! Arithmetic-function tables and the Dirichlet algebra over them.

mod algebra;
mod function;
mod sieve;
mod table;

use thiserror::Error;

pub use algebra::{
    dirichlet_convolve, gcd_sum_table, gcd_sum_transform, h_transform, kernel_product_table,
    mobius_invert, squarefree_kernel_sum,
};
pub use function::FunctionId;
pub use sieve::Sieve;
pub(crate) use table::q_to_real;
pub use table::{build_table, ArithTable, ArithValue, Growth, TableValues, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArithError {
    #[error("exact value of {fid} at n = {n} overflows 128-bit integers")]
    Overflow { fid: String, n: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse function spec {0:?}")]
    Parse(String),
    #[error("tables have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("n = {n} outside table range 1..={len}")]
    OutOfRange { n: u64, len: usize },
}
