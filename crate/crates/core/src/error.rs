use thiserror::Error;

#[derive(Debug, Error)]
pub enum HermitError {
    #[error("unsupported q = {0}; expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedQ(i64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("value {value} is not an element of a field of order {order}")]
    InvalidElement { value: u32, order: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot evaluate {0} at a point with y = 0")]
    PoleAtOrigin(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("code is missing its {0} matrix")]
    MissingMatrix(&'static str),
    #[error("subcode is not contained in the supercode")]
    NotContained,
    #[error("enumeration needs {needed} vectors but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no case of the distance theorem applies: {0}")]
    NoCase(String),
    #[error("bound sequence too short: {0}")]
    HorizonTooSmall(String),
    #[error("designed distance {delta} exceeds the code length {n}")]
    VacuousCode { delta: i64, n: usize },
    #[error("grid window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, HermitError>;
