use thiserror::Error;

/// Errors produced by construction and evaluation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("axis vector norm {norm:.3e} below the minimum {min:.1e}")]
    DegenerateAxis { norm: f64, min: f64 },

    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    #[error("scale must be positive (got {got})")]
    NonPositiveScale { got: f64 },

    #[error("spinor must have nonzero norm")]
    ZeroSpinor,

    #[error("momentum off the mass shell (relative residual {residual:.3e})")]
    OffShell { residual: f64 },

    #[error("operation requires a plus-branch pair")]
    WrongBranch,

    #[error("constraint scale must be nonzero")]
    DegenerateScale,

    #[error("path needs at least two vertices")]
    EmptyPath,

    #[error("consecutive path vertices must be distinct")]
    DegeneratePath,

    #[error("operation requires a closed path")]
    PathNotClosed,

    #[error("path passes within {min_radius:.1e} of the solenoid axis")]
    PathTouchesAxis { min_radius: f64 },

    #[error("field evaluated within {min_radius:.1e} of the solenoid axis")]
    OutsideFieldDomain { min_radius: f64 },

    #[error("segment count must be at least one")]
    ZeroSegments,

    #[error("need at least two angle samples")]
    TooFewSamples,

    #[error("step must be positive (got {got})")]
    NonPositiveStep { got: f64 },

    #[error("field is path dependent; the phase is not single valued")]
    PathDependentField,

    #[error("coupled gradient system too ill-conditioned (condition number {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("winding count must be nonzero for an axis-centered loop")]
    ZeroWindings,
}

pub type Result<T> = std::result::Result<T, Error>;
