//! Semi-Riemannian geometry of non-singular symmetric real matrix manifolds
//! under the trace metric `g_A(V, W) = tr(A⁻¹ V A⁻¹ W)`.
//!
//! The manifolds are the open components `GLSym_n(p)` of non-singular
//! symmetric matrices of signature `(p, n-p)`, their unit-determinant slices
//! `SLSym_n(p)`, and in particular the positive-definite cone `P_n` (on which
//! `g` is the affine-invariant metric) with its slice `SLP_n`.
//!
//! What the crate provides:
//!
//! - [`symcore`]: dense symmetric eigensolver, matrix exponential, principal
//!   logarithm, fractional powers, polar decomposition, signature, and
//!   congruence normalization to `J_p = diag(I_p, -I_{n-p})`.
//! - [`manifold`]: point classification, the metric tensor, the orthonormal
//!   tangent frame at `J_p`, trace-free tangent projection, and the isometric
//!   splitting `GLSym_n(p) ≅ SLSym_n(p) × R`.
//! - [`geodesics`]: closed-form geodesics `t ↦ K exp(t K⁻¹V)`, the exp/log
//!   maps and distance on `P_n`, geometric means, and the congruence
//!   transporter.
//! - [`curvature`]: Riemann (0,4) tensor, sectional curvature, Ricci tensor,
//!   scalar curvature, and the Einstein property of the slices.
//! - [`isometry`]: words over the generators {congruence, inversion,
//!   determinant scaling}, canonical forms, composition, geodesic symmetries,
//!   and identification of a black-box isometry of `P_n`.
//! - [`oracle`]: an independent finite-difference pipeline (metric Gram,
//!   Christoffel symbols, RK4 geodesics, Riemann tensor) that validates every
//!   closed form from the raw metric alone.
//! - [`verify`]: the acceptance checks wiring the two pipelines together,
//!   grouped into named suites.
//!
//! Everything is `f64`, dense, and pure; matrices are a few dozen rows at
//! most, and all randomness flows through explicit seeds.

pub mod curvature;
pub mod error;
pub mod geodesics;
pub mod isometry;
pub mod manifold;
pub mod oracle;
pub mod rng;
pub mod sample;
pub mod symcore;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
