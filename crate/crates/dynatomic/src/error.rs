use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] dynatomic_core::Error),
    #[error("{0} did not converge")]
    NonConvergence(&'static str),
    #[error("{0} exceeds the exact-arithmetic budget")]
    BudgetExceeded(String),
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
    #[error("ray bifurcates near {0}")]
    Bifurcation(num_complex::Complex64),
    #[error("Newton continuation failed at potential {0:e}")]
    NewtonDivergence(f64),
    #[error("multiplier {0} does not satisfy the jet precondition")]
    MultiplierMismatch(num_complex::Complex64),
    #[error("orbit clustering is ambiguous: {0}")]
    ClusterAmbiguous(String),
    #[error("pushforward of a double pole at the critical point is undefined")]
    DoublePoleAtZero,
    #[error("evaluation point is too close to the critical value")]
    NearCriticalValue,
    #[error("a double pole lies in the integration region")]
    DoublePoleInRegion,
    #[error("the preimage of the disk is not compactly contained in it")]
    RegionNotCompactlyContained,
    #[error("poles at distance {0:e} are too close to merge or separate")]
    PoleCollision(f64),
    #[error("point is not parabolic (residual {0:e})")]
    NotParabolic(f64),
    #[error("the multiplier equals one")]
    MultiplierOne,
    #[error("cyclic linear system is near-singular (|1 - 1/rho| = {0:e})")]
    NearSingular(f64),
    #[error("root {0} received no itinerary label")]
    UnmatchedRoot(num_complex::Complex64),
    #[error("root {0} received two different labels")]
    LabelConflict(num_complex::Complex64),
    #[error("root tracking lost its assignment at parameter {0}")]
    TrackingAmbiguity(num_complex::Complex64),
    #[error("continuation step underflow at parameter {0}")]
    StepUnderflow(num_complex::Complex64),
    #[error("another parabolic parameter lies at distance {0:e} inside the loop")]
    CrowdedLoop(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
