//! Thresholds shared by the constructions and the verification suites.
//!
//! Construction guards decide when an input is rejected. Contract
//! tolerances decide when a computed identity residual counts as a pass.

// Construction guards.

/// Number of grid points used to screen a weight for positivity.
pub const POSITIVITY_GRID: usize = 4096;
/// Smallest admissible grid value of a cosine-polynomial weight.
pub const POSITIVITY_FLOOR: f64 = 1e-9;
/// Largest periodic trapezoid node count tried before giving up.
pub const QUAD_NODE_CAP: usize = 1 << 20;
/// Allowed deviation of the computed zeroth moment from one.
pub const C0_TOL: f64 = 1e-13;
/// Imaginary residue tolerated in a real inner product.
pub const REAL_INNER_RESIDUE: f64 = 1e-10;
/// A Verblunsky coefficient this close to the unit circle is degenerate.
pub const VERBLUNSKY_MARGIN: f64 = 1e-12;
/// Norm below which Gram–Schmidt declares the measure degenerate.
pub const GS_NORM_FLOOR: f64 = 1e-12;
/// Distance of `conj(zeta) z` from one below which a CD kernel is singular.
pub const KERNEL_SINGULARITY: f64 = 1e-12;
/// Negative Laurent powers allowed to survive in a bridge combination.
pub const BRIDGE_NEGATIVE_POWER: f64 = 1e-10;
/// Guard for the scalar inversion from OPUC data to OTP data.
pub const INVERSION_FLOOR: f64 = 1e-12;
/// Distance from the unit circle below which Cauchy sums are refused.
pub const ON_CIRCLE: f64 = 1e-12;
/// Last retained Fourier coefficient of log w must fall below this.
pub const LOG_WEIGHT_TAIL: f64 = 1e-13;
/// Last retained weight Fourier coefficient for Cauchy densities.
pub const SPECTRUM_TAIL: f64 = 1e-17;
/// Leading Laurent coefficients must exceed this for root finding.
pub const LEADING_COEFF_FLOOR: f64 = 1e-12;
/// Roots further than this from the circle are a structure violation.
pub const OFF_CIRCLE_ROOT: f64 = 1e-6;
/// Denominators below this make a zero-identity ratio ill-conditioned.
pub const RATIO_DENOMINATOR_FLOOR: f64 = 1e-12;
/// Residuals at or below this level are treated as converged in rate reports.
pub const RATE_NOISE_FLOOR: f64 = 1e-13;

// Contract tolerances.

pub const GRAM: f64 = 1e-10;
pub const VERBLUNSKY_CONSISTENCY: f64 = 1e-11;
pub const SZEGO_RECURRENCE: f64 = 1e-12;
pub const STRUCTURE: f64 = 1e-11;
pub const REAL_ON_CIRCLE: f64 = 1e-11;
pub const EVAL_REAL_ON_CIRCLE: f64 = 1e-12;
pub const BRIDGE_POINTWISE: f64 = 1e-10;
pub const ROUND_TRIP: f64 = 1e-10;
pub const COEFFICIENT_RELATION: f64 = 1e-10;
pub const CONNECTION_DET: f64 = 1e-11;
pub const RECURRENCE: f64 = 1e-9;
pub const CD_IDENTITY: f64 = 1e-9;
pub const CD_OPUC_FORMS: f64 = 1e-10;
pub const RHP_FORMS: f64 = 1e-10;
pub const RHP_JUMP: f64 = 1e-8;
pub const RHP_ORIGIN: f64 = 1e-12;
pub const RHP_NORMALIZATION: f64 = 1e-6;
pub const FACTORIZATION: f64 = 1e-11;
pub const ASYMPTOTIC_RATIO: f64 = 0.9;
pub const ASYMPTOTIC_FINAL: f64 = 1e-6;
pub const ASYMPTOTIC_CROSS: f64 = 1e-9;
pub const ZERO_ON_CIRCLE: f64 = 1e-8;
pub const ZERO_GAP: f64 = 1e-6;
pub const ZERO_SEPARATION: f64 = 1e-6;
pub const ZERO_IDENTITY: f64 = 1e-8;
pub const STATED_EVEN_RATIO: f64 = 1e-10;
pub const LEBESGUE_GOLDEN: f64 = 1e-12;
/// Coefficient-wise principal part at infinity of the normalized Riemann–Hilbert matrix.
pub const RHP_PRINCIPAL_PART: f64 = 1e-10;
