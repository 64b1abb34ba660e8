use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("ring context mismatch")]
    ContextMismatch,
    #[error("order is not a well-order; use the homogenized route")]
    NotWellOrder,
    #[error("the zero operator has no weight order")]
    ZeroOperator,
    #[error("generic b-function is zero: ideal is not holonomic along the weight")]
    NotHolonomic,
    #[error("unknown polytope (dim {dim}, index {index})")]
    UnknownPolytope { dim: usize, index: usize },
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("non-simplicial facet {0:?}")]
    NonSimplicial(Vec<usize>),
    #[error("quotient ring is infinite-dimensional")]
    InfiniteQuotient,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("polytope data: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
