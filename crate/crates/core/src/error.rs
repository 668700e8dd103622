use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("pole at expansion point: {0}")]
    Pole(String),
    #[error("ball division by a divisor that may be zero")]
    BallDivisionByZero,
    #[error("radicand is certainly negative")]
    NegativeRadicand,
    #[error("radicand sign unresolved")]
    RadicandSignUnresolved,
    #[error("be-real violated: {0}")]
    BeRealViolated(String),
    #[error("r must be odd, got {0}")]
    EvenR(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("n - |lambda| = {0} is not a non-negative even number")]
    ParityMismatch(i64),
    #[error("s_(k-1) = s_(k+1) at k = {0}; a and b are not defined there")]
    NotAbCase(usize),
    #[error("s_(k-1) != s_(k+1) at k = {0}; E_ss(k) is not defined there")]
    NotEdiagCase(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("repeated parameter value in {0}")]
    RepeatedValue(String),
    #[error("singular entry: {0}")]
    Singular(String),
    #[error("omega mismatch at tableau {tableau}, k = {k}, a = {a}")]
    OmegaMismatch { tableau: String, k: usize, a: i64 },
    #[error("n must be even, got {0}")]
    OddN(usize),
    #[error("preset parse error: {0}")]
    Preset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
