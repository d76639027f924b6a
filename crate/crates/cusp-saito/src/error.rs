use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators {n} and {m} are not coprime")]
    NotCoprime { n: i64, m: i64 },
    #[error("({n}, {m}) is not a cusp pair: need 2 <= n < m")]
    NotCusp { n: i64, m: i64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("requested t-order {requested} exceeds the form truncation {available}")]
    TruncationTooDeep { requested: i64, available: i64 },
    #[error("operand has no known nonzero term below its truncation {0}")]
    ZeroToTruncation(i64),
    #[error("truncation {have} is too small, need at least {need}")]
    TruncationInsufficient { have: i64, need: i64 },
    #[error("order {0} is not in the semigroup, no primitive exists")]
    OrderGap(i64),
    #[error("iteration cap {0} reached")]
    IterationCap(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the parametrization is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("polynomial division is inexact at monomial x^{i}*y^{j}")]
    DivisionInexact { i: i64, j: i64 },
    #[error("the form does not leave the curve invariant (nu_C = {0})")]
    NotInModule(i64),
    #[error("degree bound {0} is too small to certify the maximum")]
    BoundTooSmall(i64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed or unsupported input rather than by the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::NotCoprime { .. } | Error::NotCusp { .. } | Error::InvalidInput(_))
    }
}
