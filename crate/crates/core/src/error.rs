use crate::angle::Angle;

/// Errors raised by the exact combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree must lie in 2..=10, got {0}")]
    InvalidDegree(u32),
    #[error("denominator must be positive and below 2^56")]
    InvalidDenominator,
    #[error("digit {digit} is not below the degree {degree}")]
    InvalidDigit { digit: u32, degree: u32 },
    #[error("words must be nonempty")]
    EmptyWord,
    #[error("cannot parse {0:?}")]
    Parse(alloc::string::String),
    #[error("operands carry different degrees ({0} and {1})")]
    DegreeMismatch(u32, u32),
    #[error("angle {0} is not periodic under multiplication by the degree")]
    NotPeriodic(Angle),
    #[error("the zero angle is excluded")]
    ZeroAngle,
    #[error("angle is not maximal in its orbit; the maximum is {max}")]
    NotMaximal { max: Angle },
    #[error("angle has period one")]
    PeriodOne,
    #[error("orbit of {angle} meets a partition boundary at step {step}")]
    BoundaryHit { angle: Angle, step: usize },
    #[error("the special angle has no beta family")]
    SpecialAngle,
    #[error("angle {0} is not a satellite candidate")]
    NotCandidate(Angle),
    #[error("beta angle {0} does not have the expected exact period")]
    PeriodDrop(Angle),
    #[error("angle {0} is not certified primitive")]
    NotPrimitive(Angle),
    #[error("word {0} does not have exact period equal to its length")]
    NotExactPeriod(alloc::string::String),
    #[error("enumeration of {0} words exceeds the budget")]
    BudgetExceeded(u64),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
