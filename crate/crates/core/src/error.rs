use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("permutation is not an element of the group")]
    NotInGroup,
    #[error("meataxe undecided after {0} rounds")]
    Undecided(usize),
    #[error("element of order {0} is not 2-regular")]
    NotTwoRegular(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("every specialization was discarded")]
    DegenerateFamily,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
