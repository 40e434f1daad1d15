use thiserror::Error;

/// Errors raised by the geometric and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points coincide projectively")]
    CoincidentPoints,
    #[error("point does not lie on the line (residual {residual:.3e})")]
    PointOffLine { residual: f64 },
    #[error("degenerate tuple: points are not pairwise distinct")]
    DegenerateTuple,
    #[error("no nonzero cubic satisfies the constraints")]
    EmptyNullspace,
    #[error("expected 27 lines, found {found}")]
    WrongLineCount { found: usize },
    #[error("intersection graph invariant violated: {0}")]
    GraphInvariantViolation(String),
    #[error("Schläfli labeling failed: {0}")]
    LabelingFailed(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("cross-ratio invariants are degenerate: pencil generator vanishes")]
    DegenerateInvariants,
    #[error("unexpected nullspace dimension {dim} (expected {expected})")]
    UnexpectedNullspaceDim { dim: usize, expected: usize },
    #[error("designated coefficient vanishes: cubic is ruled/degenerate")]
    RuledDegenerate,
    #[error("line pair does not carry conjugate cross ratios")]
    NotConjugatePair,
    #[error("singular transform")]
    SingularTransform,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
