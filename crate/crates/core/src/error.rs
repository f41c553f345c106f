use thiserror::Error;

use crate::mass::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a frame needs at least one hypothesis")]
    EmptyFrame,

    #[error("hypothesis label at position {position} is empty")]
    EmptyLabel { position: usize },

    #[error("duplicate hypothesis label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown hypothesis label `{0}`")]
    UnknownLabel(String),

    #[error("hypothesis index {index} is out of range for a frame of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("focal set has width {found}, frame has {expected} hypotheses")]
    WidthMismatch { expected: usize, found: usize },

    #[error("mass functions are defined on different frames")]
    FrameMismatch,

    #[error("invalid mass function: {0}")]
    Invalid(ValidationReport),

    #[error("open-world mass function (mass on the empty set) is not accepted here")]
    OpenWorldInput,

    #[error("total conflict (k12 = {conflict}): Dempster's rule is not applicable when the sources fully contradict each other")]
    TotalConflict { conflict: f64 },

    #[error("degenerate combination: {0}")]
    Degenerate(String),

    #[error("invalid beta function: {0}")]
    InvalidBeta(String),

    #[error("invalid weight assignment: {0}")]
    InvalidWeights(String),

    #[error("a report must name at least one target")]
    EmptyReport,

    #[error("infeasible scenario configuration: {0}")]
    Config(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
