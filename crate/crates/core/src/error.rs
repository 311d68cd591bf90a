use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by a scalar whose body is zero")]
    DivisionByNonUnit,
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("indeterminate valuation: {0}")]
    IndeterminateValuation(String),
    #[error("negative valuation: {0}")]
    NegativeValuation(String),
    #[error("invalid parameter set: {0}")]
    InvalidParameters(String),

    #[error("matrix with {0} rows is not indexed by a tensor square")]
    NonSquareTensorDim(usize),
    #[error("transform is singular")]
    SingularTransform,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("generator sets differ: {0}")]
    GeneratorMismatch(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("relation `{relation}` has a non-unit leading coefficient; {hint}")]
    NonUnitLeadingCoefficient { relation: String, hint: String },
    #[error("quotient leaves residual dependence: {0}")]
    ResidualDependence(String),
    #[error("zero relation: {0}")]
    ZeroRelation(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by an expression containing generators")]
    DivisionByGeneratorExpression,

    #[error("unknown catalog id `{id}`{}", suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default())]
    UnknownId { id: String, suggestion: Option<String> },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
