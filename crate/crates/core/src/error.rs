use thiserror::Error;

/// Failure modes shared by the geometry, dynamics, quadrature and quantum solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point lies within {separation:e} of the focal ring (λ₊ - λ₋ below threshold)")]
    FocalRingSingularity { separation: f64 },

    #[error("point lies on the symmetry axis; azimuthal direction undefined")]
    AxisSingularity,

    #[error("trajectory entered the focal-ring neighbourhood at t = {t}")]
    SingularityApproach { t: f64 },

    #[error("integrator step failure at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },

    #[error("state lies in the classically forbidden region ({which} = {value:e})")]
    ForbiddenRegion { which: &'static str, value: f64 },

    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),

    #[error("recurrence breakdown at index {index}: leading coefficient vanishes")]
    RecurrenceBreakdown { index: usize },

    #[error("eigenvalue iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
