use thiserror::Error;

/// Errors surfaced by the exact and numerical pipelines.
///
/// Truncation problems are always reported, never silently absorbed: a window
/// that is too small for the requested element is an error, not an approximation.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid mode index: {0}")]
    InvalidMode(String),

    #[error("window level {requested} too small for this element (need at least {needed})")]
    WindowTooSmall { requested: u32, needed: u32 },

    #[error("value is not exactly representable in Z[sqrt2][1/2]: {0}")]
    NotExact(String),

    #[error("breakpoint data does not define a dyadic PL homeomorphism: {0}")]
    BadMap(String),

    #[error("word is malformed: {0}")]
    BadWord(String),

    #[error("the two words do not commute as maps; commutator phase undefined")]
    NonCommuting,

    #[error("joint kernel dimension is {dim}, expected 1 (truncation too small?)")]
    KernelDim { dim: usize },

    #[error("logarithm branch ambiguous: eigenvalue {value:.6} within {tol:.1e} of -1")]
    BranchAmbiguity { value: f64, tol: f64 },

    #[error("operator is not scalar on the test labels: dispersion {dispersion:.3e} > {tol:.1e}")]
    NotScalar { dispersion: f64, tol: f64 },

    #[error("Fredholm index did not stabilize: {at_n} at level {n}, {at_n2} at level {n2}")]
    IndexUnstable {
        n: u32,
        at_n: i64,
        n2: u32,
        at_n2: i64,
    },

    #[error("mode expansion exceeds the truncation budget: {0}")]
    ModeOverflow(String),

    #[error("linear solve failed: {0}")]
    SolveFailed(String),

    #[error("mantissa does not fit the serialization width: {0}")]
    SerializationRange(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
