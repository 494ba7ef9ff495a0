//! Numeric tolerances, stated once and used across the crate.
//!
//! Relative tolerances are scaled by a norm of the operands at the point of
//! use; absolute ones are compared directly.

/// Orthogonality residual `‖QᵀQ - I‖_F` accepted for computed orthogonal
/// factors.
pub const TOL_ORTHO: f64 = 1e-12;

/// Relative reconstruction residual for factorizations
/// (`‖QΛQᵀ - A‖_F / ‖A‖_F`, `‖UQ - A‖_F / ‖A‖_F`, ...).
pub const TOL_RECON: f64 = 1e-10;

/// An eigenvalue is treated as zero when `|λ| ≤ TOL_PD · max|λ|`.
pub const TOL_PD: f64 = 1e-12;

/// Residual accepted for logarithm/exponential round trips.
pub const TOL_LOG: f64 = 1e-9;

/// Membership tolerance for the unit-determinant slice
/// (`|det - (-1)^(n-p)| < TOL_DET`; the target is ±1 so relative and
/// absolute coincide).
pub const TOL_DET: f64 = 1e-9;

/// A tangent is trace-free at `Q` when `|tr(Q⁻¹V)| ≤ TOL_TRACE · ‖V‖_F`.
pub const TOL_TRACE: f64 = 1e-10;

/// Absolute tolerance on curvature identities (scalar contraction, Einstein
/// residual, sign conventions).
pub const TOL_CURV: f64 = 1e-8;

/// A tangent plane is degenerate when its metric Gram determinant is below
/// `TOL_PLANE · ‖X‖_F² ‖Y‖_F²`.
pub const TOL_PLANE: f64 = 1e-10;

/// Probe tolerance for identifying a black-box isometry.
pub const TOL_ID: f64 = 1e-6;

/// Jacobi eigensolver: convergence when the off-diagonal Frobenius norm
/// drops below `JACOBI_TOL · ‖A‖_F`, give up after `JACOBI_MAX_SWEEPS`.
pub const JACOBI_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Matrix exponential: scale so the 1-norm is at most `EXPM_SCALE_LIMIT`,
/// truncate the Taylor series once a term's norm falls below `EXPM_TERM_TOL`.
pub const EXPM_SCALE_LIMIT: f64 = 0.5;
pub const EXPM_TERM_TOL: f64 = 1e-18;

/// Central-difference step for metric differencing in the oracle module.
pub const ORACLE_STEP: f64 = 1e-4;

/// Default RK4 step count on a unit parameter interval.
pub const ORACLE_RK4_STEPS: usize = 2000;
