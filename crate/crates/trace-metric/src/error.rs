//! Error type shared by every module of the crate.

/// Errors raised by matrix kernels, manifold classification and the
/// isometry/verification machinery.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Matrix order below the supported minimum of 2.
    #[error("matrix order must be at least 2, got {0}")]
    OrderTooSmall(usize),

    /// Row/column data does not form a square matrix of the stated order.
    #[error("expected {expected}x{expected} entries, got a row of length {found}")]
    ShapeMismatch { expected: usize, found: usize },

    /// Input required to be symmetric is not.
    #[error("matrix is not symmetric (max |a_ij - a_ji| = {0:e})")]
    NotSymmetric(f64),

    /// Jacobi sweeps exhausted before the off-diagonal norm converged.
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    /// An eigenvalue sits within the near-singular tolerance of zero.
    #[error("matrix is singular or nearly singular")]
    NearSingular,

    /// A positive-definite matrix was required.
    #[error("matrix is not positive definite (min eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    /// Principal logarithm domain violation.
    #[error("spectrum is not strictly positive (eigenvalue {0:e})")]
    NonPositiveSpectrum(f64),

    /// The similarity transform by the supplied witness did not produce a
    /// symmetric matrix, so the input is not diagonalizable down this path.
    #[error("cannot diagonalize: similarity residual {0:e}")]
    NotDiagonalizable(f64),

    /// Signature index out of `0..=n`.
    #[error("signature index p = {p} out of range for order n = {n}")]
    SignatureOutOfRange { p: usize, n: usize },

    /// Point required to lie on the unit-determinant slice does not.
    #[error("point is off the unit-determinant slice (det = {0})")]
    OffDeterminantSlice(f64),

    /// Sectional curvature requested for a degenerate tangent plane.
    #[error("tangent plane is degenerate (Gram determinant {0:e})")]
    DegeneratePlane(f64),

    /// A black-box map failed the isometry verification probe.
    #[error("map is not an isometry (max probe deviation {0:e})")]
    NotAnIsometry(f64),

    /// Geodesic integration left the non-singular region.
    #[error("trajectory left the non-singular region at t = {0}")]
    IntegrationFailure(f64),

    /// Malformed argument to a public entry point.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
