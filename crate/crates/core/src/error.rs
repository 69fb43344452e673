//! Shared error type for the engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Gl2Error {
    #[error("pairing index {p} out of range for degrees {m} and {n}")]
    PairingOutOfRange { p: usize, m: usize, n: usize },
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coefficient list has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("chart breakdown: B + C U is singular")]
    ChartBreakdown,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not conformal-symplectic: {0}")]
    NotConformalSymplectic(String),
    #[error("result matrix is not symmetric")]
    NotSymmetric,
    #[error("root clustering is ambiguous at the given tolerance")]
    AmbiguousClustering,
    #[error("no relation of the requested degree vanishes on the samples")]
    RelationNotFound,
    #[error("relation space has dimension {0} > 1 at the minimal degree")]
    RelationAmbiguous(usize),
    #[error("operation undefined for the trivial root type")]
    TrivialType,
    #[error("exterior derivative rules are missing an entry for {0}")]
    MissingRule(String),
    #[error("evaluation at a pole of the defining function")]
    Pole,
    #[error("symbol matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("inconsistent linear system while solving for constants")]
    InconsistentSystem,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}
