use thiserror::Error;

/// Shape and usage errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring width must be at least 2, got {0}")]
    WidthTooSmall(usize),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("horizon mismatch: expected {expected}, found {found}")]
    HorizonMismatch { expected: usize, found: usize },
    #[error("time {t} out of range for horizon {horizon}")]
    TimeOutOfRange { t: usize, horizon: usize },
    #[error("position {x} out of range for width {width}")]
    PositionOutOfRange { x: usize, width: usize },
    #[error("a spacetime diagram needs at least one row")]
    EmptyDiagram,
    #[error("gauge rule `none` has no internal dynamics")]
    NoGaugeDynamics,
    #[error("invalid theory: {0}")]
    InvalidTheory(String),
    #[error("curvature needs a horizon of at least 1")]
    NoPlaquettes,
    #[error("seed has {found} bits, expected one per parity chain ({expected})")]
    SeedLength { expected: usize, found: usize },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
