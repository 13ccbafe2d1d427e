//! Central tolerance constants.
//!
//! Inputs arrive through text formats with rounding, and double-precision
//! eigensolves at dimension <= 16 carry roughly 1e-12 of error, so the
//! validation thresholds sit well above machine epsilon while the theorem
//! checks keep a 1e-9 margin.

/// Max allowed |A_ij - conj(A_ji)| before a matrix is rejected as
/// non-Hermitian (it is symmetrized below this).
pub const HERMITICITY: f64 = 1e-9;

/// Max allowed |Tr rho - 1| before rejection; the trace is renormalized
/// exactly below this.
pub const UNIT_TRACE: f64 = 1e-9;

/// Eigenvalues below -PSD_FLOOR reject the state; eigenvalues in
/// [-PSD_FLOOR, 0) are clamped to zero and the state renormalized.
pub const PSD_FLOOR: f64 = 1e-10;

/// Max allowed deviation of a pure-state vector norm from 1.
pub const STATE_NORM: f64 = 1e-10;

/// Eigenvalues below this count as zero wherever a decomposition is built;
/// separates genuine rank from floating-point noise at desk dimensions.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Ensemble members with weight below this are dropped to avoid 0/0
/// normalizations downstream.
pub const WEIGHT_FLOOR: f64 = 1e-14;

/// Max allowed deviation of ensemble weights from summing to 1.
pub const WEIGHT_SUM: f64 = 1e-9;

/// Max allowed |U^dag U - I| entry for a matrix accepted as an isometry.
pub const ISOMETRY: f64 = 1e-9;

/// Default tolerance for the identity checks (lhs = rhs relations).
pub const IDENTITY_CHECK: f64 = 1e-9;

/// Slack allowed on inequality checks and decomposition brackets.
pub const BOUND_SLACK: f64 = 1e-9;

/// How close the local-search extremes must come to the closed forms.
/// The search is an oracle, not a proof: it must bracket tightly, not
/// exactly, so this is much looser than `IDENTITY_CHECK`.
pub const REACH: f64 = 1e-3;

/// Golden-section interval floor and per-sweep improvement floor in the
/// decomposition refinement.
pub const REFINE_FLOOR: f64 = 1e-10;
