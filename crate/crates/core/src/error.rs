use thiserror::Error;

/// Errors raised by the arithmetic, pseudo-limit and cut machinery.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("zero argument where a nonzero group element is required")]
    ZeroArgument,

    #[error("division by an exact zero")]
    ZeroDivisor,

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("undecidable at precision: {0}")]
    UndecidableAtPrecision(String),

    #[error("negative value: residue undefined for {0}")]
    NegativeValue(String),

    #[error("coefficient power not representable: ({base})^({exponent})")]
    NonRepresentableCoefficientPower { base: String, exponent: String },

    #[error("not positive: {0}")]
    NotPositive(String),

    #[error("not pseudo-Cauchy at indices ({rho}, {sigma}, {tau}): {detail}")]
    NotPseudoCauchy {
        rho: usize,
        sigma: usize,
        tau: usize,
        detail: String,
    },

    #[error("sequence too short: need at least {needed} elements, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("sides are not separated: {0}")]
    NotSeparated(String),

    #[error("no witness exists in this order: {0}")]
    NoWitness(String),

    #[error("target equals a sampled element: {0}")]
    EqualityDetected(String),

    #[error("classification ambiguous at depth {depth}: max of delta improved from {before} to {after} and then stabilised")]
    AmbiguousAtDepth {
        depth: usize,
        before: String,
        after: String,
    },

    #[error("claim violated: {0}")]
    ClaimViolation(String),

    #[error("residue collision: {0}")]
    ResidueCollision(String),

    #[error("separation failure: {0}")]
    SeparationFailure(String),

    #[error("value not expressible over the representatives: {0}")]
    NonExpressible(String),

    #[error("wrong case: expected {expected}, got {got}")]
    WrongCase { expected: String, got: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("coefficient outside the configured field: {0}")]
    OutsideField(String),
}

impl Error {
    /// True for the errors that a caller can cure by asking for more precision.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision(_) | Error::UndecidableAtPrecision(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
