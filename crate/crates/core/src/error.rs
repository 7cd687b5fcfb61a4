use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    /// The inverse exists over the rationals but its denominator carries a
    /// prime that is not inverted in the target localization.
    #[error("not a unit: inverse needs denominator {denominator}")]
    NotAUnit { denominator: String },

    #[error("denominator {denominator} is not invertible modulo {p}")]
    DenominatorNotInvertible { denominator: String, p: u64 },

    #[error("exponent {t} is not coprime to the order {k}")]
    NotCoprime { t: i64, k: u64 },

    #[error("skein recursion budget exceeded: {0}")]
    RecursionBudgetExceeded(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
