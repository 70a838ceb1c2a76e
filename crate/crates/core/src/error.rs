use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("realization index {index} out of range for an ensemble of {realizations}")]
    IndexOutOfRange { index: u64, realizations: u64 },

    #[error("degenerate input: polynomial is identically zero")]
    DegenerateInput,

    #[error("degree deficient: top coefficients a_N and b_N are both zero")]
    DegreeDeficient,

    #[error("root refinement did not converge in bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64 },

    #[error("eigenvalue iteration did not converge (order {order})")]
    EigenNoConvergence { order: usize },

    #[error("degenerate separation at tau = {tau}: C = {c} is not positive")]
    DegenerateSeparation { tau: f64, c: f64 },

    #[error("below resolvable separation at x = {x}")]
    BelowResolvableSeparation { x: f64 },

    #[error("arcsin argument {ratio} outside [-1, 1]")]
    ArcsinDomain { ratio: f64 },

    #[error("quadrature did not reach tolerance on [{a}, {b}] (estimated error {error:e})")]
    QuadratureNoConvergence { a: f64, b: f64, error: f64 },

    #[error("x = {x} outside the expansion domain [0, {max}]")]
    ExpansionDomain { x: f64, max: f64 },

    #[error("empty ensemble")]
    EmptyEnsemble,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
