use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtEvaluationPoint,
    #[error("gamma function pole near {0}")]
    GammaPole(String),
    #[error("selection rule violated: {0}")]
    SelectionRuleViolation(String),
    #[error("singular basis in linear solve: {0}")]
    SingularBasis(String),
    #[error("label sequence is not admissible: {0}")]
    NotAdmissible(String),
    #[error("indicial denominator vanished at offset {0}")]
    IndicialDenominatorZero(i64),
    #[error("requested order {requested} exceeds supported order {supported}")]
    TruncationUnderflow { requested: i64, supported: i64 },
    #[error("point outside the domain: {0}")]
    DomainViolation(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that reflect bad input data rather than bad usage.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_))
    }
}
