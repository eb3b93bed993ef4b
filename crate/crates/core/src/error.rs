use thiserror::Error;

/// Errors raised across the construction, analysis and simulation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("code length {0} is even; idempotent theory needs gcd(n, 2) = 1")]
    EvenLength(usize),
    #[error("code length {0} is too small (need n >= 3)")]
    LengthTooSmall(usize),
    #[error("splitting field GF(2^{m}) for n = {n} exceeds the configured limit m <= {limit}")]
    FieldTooLarge { n: usize, m: u32, limit: u32 },
    #[error("division by zero in GF(2^m)")]
    DivisionByZero,
    #[error("polynomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("exact division left a nonzero remainder")]
    NonzeroRemainder,
    #[error("minimal polynomial of coset {leader} has a coefficient outside GF(2)")]
    NonBinaryCoefficient { leader: usize },
    #[error("polynomial is not a factor of z^{0}+1 in this factor set")]
    NotAFactor(usize),
    #[error("polynomial is not an idempotent modulo x^{0}+1")]
    NotIdempotent(usize),
    #[error("subset of factor indices is empty")]
    EmptySubset,
    #[error("factor index {index} out of range (t = {t})")]
    IndexOutOfRange { index: usize, t: usize },
    #[error("enumeration budget exceeded ({needed} > {budget})")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("code has dimension zero")]
    ZeroDimension,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("malformed alist: {0}")]
    Alist(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("vector length {got} does not match matrix width {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
    #[error("catalog line {line}: {reason}")]
    Catalog { line: usize, reason: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
