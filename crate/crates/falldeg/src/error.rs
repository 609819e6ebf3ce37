use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("supplied modulus is reducible")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("polynomials belong to different rings")]
    MixedRings,
    #[error("{0} is not a valid subfield cardinality here")]
    InvalidSubfield(u64),
    #[error("the given elements do not form a basis")]
    NotABasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("polynomial degree exceeds the space degree")]
    DegreeTooLarge,
    #[error("ideal oracle infeasible: {0}")]
    OracleInfeasible(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("projection to the first coordinate is not injective")]
    ProjectionNotInjective,
    #[error("tau base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("constant input where a nonconstant polynomial is required")]
    ConstantInput,
    #[error("descent basis is not a normal basis")]
    NotNormalBasis,
    #[error("zero input where a nonzero polynomial is required")]
    ZeroInput,
    #[error("descent basis is rank deficient")]
    BasisRankDeficient,
    #[error("no univariate polynomial found in V_d at level {level} (dim {dim})")]
    NoUnivariateFound { level: usize, dim: usize },
    #[error("ideal is not radical")]
    NotRadical,
    #[error("field too small: need |k| > {0}")]
    FieldTooSmall(u64),
    #[error("trial cap exceeded while sampling")]
    TrialCapExceeded,
    #[error("parameter cap exceeded: {0}")]
    ParameterCapExceeded(String),
    #[error("solve degree escalation passed the theorem bound {bound} (reached {reached})")]
    BoundExceeded { bound: u32, reached: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
