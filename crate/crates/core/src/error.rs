use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("labeled-space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("duplicate mode label `{0}` in one space")]
    DuplicateLabel(String),
    #[error("unknown mode label `{0}`")]
    UnknownLabel(String),
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(String),
    #[error("operator is not unitary: {0}")]
    NotUnitary(String),
    #[error("measurement is not a complete projective measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid transmission: a² = {0} gives T = a/b > 1 (requires b ≥ a)")]
    InvalidTransmission(String),
    #[error("hypothesis out of range: a² = {0} (requires 0 < a² ≤ 1/2)")]
    HypothesisOutOfRange(String),
    #[error("value is not exactly representable: {0}")]
    NotExact(String),

    #[error("unknown preparation `{0}`")]
    UnknownPreparation(String),
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("unknown outcome `{outcome}` in context `{context}`")]
    UnknownOutcome { context: String, outcome: String },
    #[error("unknown ontic state `{0}`")]
    UnknownOnticState(String),
    #[error("conditional response undefined: P({alpha} | {context}, {lambda}) = 0")]
    UndefinedConditional {
        context: String,
        alpha: String,
        lambda: String,
    },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("fragment mismatch: {0}")]
    FragmentMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
}
