use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("Z(1) = {0}, expected 1")]
    NotNormalized(String),
    #[error("M_{index} = {value} is not a non-negative integer")]
    NonIntegralCount { index: usize, value: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected {expected} variable(s), got {got}")]
    Arity { expected: usize, got: usize },
    #[error("naive count needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("modulus p^{exp} does not fit in 63 bits")]
    ModulusTooLarge { exp: u32 },
    #[error("no chart cells given")]
    EmptyCells,
    #[error("only the trivial character is supported, got order {0}")]
    NontrivialCharacter(u64),
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error("descent exceeded depth {0}")]
    DepthExceeded(u32),
    #[error("non-rational center required: {0}")]
    NonRationalCenter(String),
    #[error("max_steps = {0} exceeded")]
    MaxStepsExceeded(usize),
    #[error("f(0,0) != 0, not a germ through the origin")]
    NotThroughOrigin,
    #[error("Z is a polynomial in t and has no poles")]
    NoPoles,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
