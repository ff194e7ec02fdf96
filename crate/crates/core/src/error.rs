use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("both factors occupy the same legs; use same_leg_product")]
    LegsCoincide,

    #[error("r is not invariant under α⊗α")]
    RNotAlphaInvariant,

    #[error("hypothesis `{label}` violated at {witness:?}")]
    HypothesisViolated { label: String, witness: Vec<usize> },

    #[error("basis partition invalid: {0}")]
    PartitionInvalid(String),

    #[error("twist of the dual algebra must be the transpose of α")]
    TwistMismatch,

    #[error("not a Hom-Poisson bialgebra: {0}")]
    InvalidBialgebra(String),

    #[error("module check failed: {0}")]
    InvalidModule(String),

    #[error("not an O-operator: {0}")]
    InvalidOOperator(String),

    #[error("coalgebra is not the coboundary of r: {0}")]
    CoalgebraMismatch(String),

    #[error("r is not quasitriangular: {0}")]
    NotQuasitriangular(String),

    #[error("fixture invalid: {0}")]
    FixtureInvalid(String),

    #[error("grid has {points} points, cap is {cap}")]
    GridTooLarge { points: u128, cap: u128 },

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("tensor `{role}` has wrong shape: expected {expected}, found {found}")]
    ShapeError { role: String, expected: String, found: String },

    #[error("tensor `{role}`: {message}")]
    BadScalar { role: String, message: String },

    #[error("missing tensor `{0}`")]
    MissingTensor(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Input errors are the user's fault; the CLI maps them to exit code 2.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::GridTooLarge { .. })
    }
}
