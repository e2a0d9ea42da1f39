use thiserror::Error;

/// Errors raised by the engine.
///
/// Failed structural checks are not errors: the validators return reports that
/// carry their own outcome. These variants cover invalid input and the few
/// operations that can fail to converge.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("multinacci degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),

    #[error("could not certify irreducibility of the degree-{0} multinacci polynomial")]
    NotCertifiedIrreducible(usize),

    #[error("field mismatch: expected degree {expected}, got {found}")]
    FieldMismatch { expected: usize, found: usize },

    #[error("level mismatch: expected level {expected}, got {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("m = {0} is odd; the recurrence only holds for even m")]
    OddDegree(usize),

    #[error("m = {0} is even; this check requires odd m")]
    EvenDegree(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("requested precision of {0} digits exceeds the iteration budget")]
    PrecisionUnachievable(u32),

    #[error("asymptotic bracket did not shrink: width {late} at n = {n_late} vs {early} at n = {n_early}")]
    BracketNotShrinking {
        n_early: usize,
        early: f64,
        n_late: usize,
        late: f64,
    },

    #[error("sampled |F_{n}| = {max_abs} exceeds the total-variation bound {bound}")]
    BoundViolated {
        n: usize,
        max_abs: f64,
        bound: String,
    },

    #[error("malformed measure: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
