use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sample count {0} is not a power of two >= 16")]
    InvalidSampleCount(usize),

    #[error("{0}")]
    Domain(String),

    #[error("input validation failed: {0}")]
    Invalid(String),

    #[error("coefficient support on the wrong side exceeds tolerance (offending mass {0:.3e})")]
    WrongSideSupport(f64),

    #[error("series tail not certified: |a_M| rho^M = {tail:.3e} exceeds {bound:.3e}; increase modes or shrink the extraction radius")]
    TailBound { tail: f64, bound: f64 },

    #[error("fixed-point iteration stagnated after {iterations} steps (contraction factor {factor:.4}, residual {residual:.3e})")]
    SolverStagnation {
        iterations: usize,
        factor: f64,
        residual: f64,
    },

    #[error("orientation lost: discrete Jacobian <= 0 at node ({x:.4}, {y:.4})")]
    DegenerateJacobian { x: f64, y: f64 },

    #[error("monotonicity violated after interpolation near x = {0:.6}")]
    MonotonicityLost(f64),

    #[error("boundary trace departs the unit circle by {defect:.3e} (> {allowed:.1e}); grid too coarse for the symmetric solve")]
    SymmetryViolation { defect: f64, allowed: f64 },

    #[error("pushforward node ({x:.4}, {y:.4}) leaves the grid hull")]
    Extrapolation { x: f64, y: f64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
