use thiserror::Error;

/// Error type for all fallible operations in this crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A word, braid word, or scalar failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A generator index lies outside the valid range for the object.
    #[error("generator index {index} out of range: {reason}")]
    GeneratorRange { index: i64, reason: String },

    /// Two objects that must share a strand count do not.
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(u32, u32),

    /// Matrix dimensions are incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Two operator matrices live over different group oracles.
    #[error("group oracle mismatch: {0}")]
    OracleMismatch(String),

    /// A homomorphism was applied to a word outside its source alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A map or weight assignment violates the required grading.
    #[error("grading violation: {0}")]
    GradingViolation(String),

    /// A group presentation relator is not killed by the candidate map.
    #[error("relator not preserved: {0}")]
    RelatorNotPreserved(String),

    /// Ball enumeration exceeded the configured element cap.
    #[error("ball enumeration exceeded cap of {cap} elements at radius {radius}")]
    BallCapExceeded { cap: usize, radius: u32 },

    /// A symbolic product exceeded the configured term cap.
    #[error("symbolic computation exceeded cap of {cap} terms")]
    TermCapExceeded { cap: usize },

    /// A numeric parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal invariant failed; indicates a bug in this crate.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
