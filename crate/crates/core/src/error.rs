use thiserror::Error;

/// Errors raised while building or checking the polynomial systems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid weight specification: {0}")]
    InvalidWeight(String),

    #[error("weight not strictly positive: minimum {min:e} at theta = {theta}")]
    NotPositive { min: f64, theta: f64 },

    #[error("quadrature did not converge within {cap} nodes (last table difference {diff:e})")]
    QuadratureFailure { cap: usize, diff: f64 },

    #[error("moment index {needed} outside the table (n_max = {available})")]
    MomentRange { needed: i64, available: usize },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} exceeds the available order {available}")]
    IndexOutOfRange { index: usize, available: usize },

    #[error("singular kernel: |1 - conj(zeta) z| = {0:e}")]
    SingularKernel(f64),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("scalar inversion degenerate: {0}")]
    InversionDegenerate(String),

    #[error("point lies on the unit circle (||z| - 1| = {0:e}); use boundary values")]
    OnCircle(f64),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("ill-conditioned evaluation: {0}")]
    Conditioning(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
