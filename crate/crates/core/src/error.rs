use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} is not p-integral for p = {1}")]
    NotPIntegral(String, u32),
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("variable lists or caps differ")]
    VariableMismatch,
    #[error("substituted series for `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(String),
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("linear coefficient is not a unit")]
    NonUnitLinearCoefficient,
    #[error("integrality failure: {0}")]
    IntegralityFailure(String),
    #[error("series is not preparable: {0}")]
    NotPreparable(String),
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("index {0} out of range 0..{1}")]
    IndexOutOfRange(usize, usize),
    #[error("lower coefficient y^{0} does not vanish")]
    PrerequisiteVanishingFailed(usize),
    #[error("neither sign satisfies the relation")]
    NeitherSignHolds,
    #[error("back-substitution leaves a defect: {0}")]
    ResidualMismatch(String),
    #[error("descent step did not reduce weight ({0} -> {1})")]
    WeightNotReduced(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}
