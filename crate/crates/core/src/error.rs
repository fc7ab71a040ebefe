use crate::ring::{Context, VarId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(Context, Context),
    #[error("x variable {var} is outside the context {ctx}")]
    XIndexOutOfRange { var: VarId, ctx: Context },
    #[error("matrix is not square: {rows} rows but row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("divisibility violation: {0}")]
    DivisibilityViolation(String),
    #[error("cannot specialize x variable {0}")]
    XSpecialization(VarId),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("length error: {0}")]
    Length(String),
    #[error("not a dented partition: {0:?}")]
    NotDented(Vec<u32>),
    #[error("unsupported alphabet argument: {0}")]
    UnsupportedArgument(String),
    #[error("polynomial is not symmetric under x{0} <-> x{1}")]
    SymmetryViolation(u32, u32),
    #[error("schur expansion incomplete: {0}")]
    ExpansionIncomplete(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
