use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgError {
    #[error("composability mismatch: {0}")]
    Composability(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("missing differential for generator {0}")]
    MissingDifferential(String),
    #[error("degree error at {generator}: expected {expected}, found {found}")]
    DegreeError {
        generator: String,
        expected: i64,
        found: String,
    },
    #[error("ordinal violation: d({generator}) uses {uses}")]
    OrdinalViolation { generator: String, uses: String },
    #[error("d^2 != 0 at {generator}: residual {residual}")]
    DSquaredNonzero { generator: String, residual: String },
    #[error("boundary mismatch at {generator}: {detail}")]
    Boundary { generator: String, detail: String },
    #[error("functor fails d-commutation at {generator}: residual {residual}")]
    NotChainMap { generator: String, residual: String },
    #[error("{0} is not closed")]
    NotClosed(String),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("not a semifree extension: {0}")]
    NotExtension(String),
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no cancellation: {0}")]
    NoCancellation(String),
    #[error("witness failed: {0}")]
    Witness(String),
    #[error("coefficient ring is not a field: {0}")]
    NotAField(String),
}

pub type Result<T> = std::result::Result<T, DgError>;
