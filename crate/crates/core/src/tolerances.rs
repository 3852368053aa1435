//! Central numeric tolerances.
//!
//! Every threshold used by the verification checks lives here so reports can
//! cite one source of truth.

/// Relative roundtrip error allowed for a forward/inverse transform pair.
pub const TRANSFORM_ROUNDTRIP: f64 = 1e-12;

/// Relative error allowed for the conjugate-operator involution and the
/// interior-projection identity on the circle.
pub const SPECTRAL_IDENTITY: f64 = 1e-11;

/// Agreement between the multiplier route and the direct principal-value
/// quadrature on band-limited inputs.
pub const QUADRATURE_CONSISTENCY: f64 = 1e-6;

/// Relative imaginary mass allowed in a function flagged as real-valued.
pub const REAL_FLAG: f64 = 1e-12;

/// Absolute homogeneity of the discrete seminorms.
pub const SEMINORM_HOMOGENEITY: f64 = 1e-12;

/// Relative mismatch allowed between `exp(log h')` and the stored derivative
/// samples of a circle diffeomorphism.
pub const DIFFEO_DERIV_CONSISTENCY: f64 = 1e-10;

/// Deviation of the grid mean of h' from 1 (degree-one circle map).
pub const DIFFEO_MEAN_DERIV: f64 = 1e-10;

/// Linearity defect allowed for the composition operator.
pub const COMPOSITION_LINEARITY: f64 = 1e-10;

/// Half-plane extension: quadrature/evaluation agreement for smooth inputs.
pub const EXTENSION_POINTWISE: f64 = 1e-10;

/// Max-norm residual of the Beltrami fixed-point iteration at convergence.
pub const SOLVER_RESIDUAL: f64 = 1e-8;

/// Iteration cap for the Beltrami solver.
pub const SOLVER_MAX_ITERATIONS: usize = 200;

/// Sup-norm cap on Beltrami coefficients accepted by the solver; keeps the
/// Neumann iteration a measured contraction with margin.
pub const SOLVER_MU_CAP: f64 = 0.7;

/// Relative tail mass allowed when certifying a truncated Taylor series.
pub const JET_TAIL: f64 = 1e-10;

/// Allowed deviation of the leading jet coefficient from 1 under the
/// disk-conformal normalization.
pub const JET_LEADING_COEFF: f64 = 1e-8;

/// Defect of |F| = 1 on the unit circle beyond which a symmetric solve is
/// rejected as under-resolved.
pub const TRACE_CIRCULARITY_GATE: f64 = 1e-4;

/// Relative residual of the scale recurrence identity, per step.
pub const RECURRENCE_IDENTITY: f64 = 1e-12;

/// Divergence threshold for the scale recurrence.
pub const RECURRENCE_DIVERGED: f64 = 1e6;

/// Overflow cap for recurrence iterates.
pub const RECURRENCE_CAP: f64 = 1e300;

/// Ratio allowed between the split-norm of a one-sided part and the Zygmund
/// seminorm of the function it came from (measured, recorded in reports).
pub const SPLIT_NORM_FACTOR: f64 = 8.0;
