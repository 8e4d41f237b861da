use thiserror::Error;

/// Errors raised by the kernel. Check failures are not errors; they are
/// report content.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible (zero divisor modulo the minimal polynomial)")]
    NotInvertible,

    #[error("generator symbol `{0}` is not available in this context")]
    GeneratorInBaseContext(String),

    #[error("invalid extension field: {0}")]
    InvalidExtension(String),

    #[error("automorphism index {index} out of range (group has {order} elements)")]
    AutomorphismIndex { index: usize, order: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix")]
    Singular,

    #[error("structure constant w{i}*w{j}[{k}] = {value} is not in the base field")]
    NonRational {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },

    #[error("twisted basis element w{0} is not fixed by the twisted Galois action")]
    NotInvariant(usize),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("line {line}: {msg}")]
    Problem { line: usize, msg: String },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
