//! Geodesics of the trace metric.
//!
//! On `GLSym_n(p)` the geodesics are exactly `t ↦ K exp(tC)` with `C = K⁻¹V`,
//! `V` symmetric; restricting to `tr(K⁻¹V) = 0` keeps the curve on the
//! unit-determinant slice. On the positive-definite cone the manifold is
//! Cartan-Hadamard, so any two points are joined by a unique arc
//! `γ(t) = A (A⁻¹B)^t`, the induced distance is
//! `d(A, B) = (Σ ln² μ_i)^{1/2}` over the eigenvalues `μ_i` of `A⁻¹B`, and
//! midpoints are geometric means.
//!
//! Boundary-value problems are offered only on the SPD component; for
//! indefinite signatures only initial-value geodesics exist here, since
//! existence and uniqueness of connecting arcs is unresolved there.

use crate::error::{Error, Result};
use crate::manifold::{metric_eval, ManifoldPoint, TangentVector};
use crate::symcore::{
    eig_sym, expm, log_spd_quotient, sqrt_and_inv_sqrt_spd, GeneralMatrix, SymMatrix,
};
use crate::tol::TOL_TRACE;

/// Geodesic `t ↦ K exp(tC)` with `K` the start point and `C = K⁻¹V` built
/// from a symmetric initial velocity `V`, so `K·C` is symmetric by
/// construction. `restricted_to_sl` records `tr C = 0` within tolerance.
#[derive(Debug, Clone)]
pub struct Geodesic {
    start: ManifoldPoint,
    direction: GeneralMatrix,
    restricted_to_sl: bool,
}

impl Geodesic {
    /// Geodesic through `start` with initial velocity `velocity ∈ Sym_n`.
    pub fn from_initial(start: ManifoldPoint, velocity: &SymMatrix) -> Geodesic {
        let direction = start.inverse_matrix().mul(velocity);
        let restricted = direction.trace().abs() <= TOL_TRACE * direction.frobenius_norm().max(1.0);
        Geodesic {
            start,
            direction,
            restricted_to_sl: restricted,
        }
    }

    pub fn start(&self) -> &ManifoldPoint {
        &self.start
    }

    /// The exponent matrix `C = K⁻¹V`.
    pub fn direction(&self) -> &GeneralMatrix {
        &self.direction
    }

    pub fn restricted_to_sl(&self) -> bool {
        self.restricted_to_sl
    }

    /// Initial velocity `V = K·C`.
    pub fn initial_velocity(&self) -> SymMatrix {
        self.start
            .matrix()
            .to_general()
            .mul(&self.direction)
            .symmetrized()
    }

    /// `γ(t) = K exp(tC)`, classified. The signature of the start point is
    /// preserved for every `t`, and on the slice the determinant is constant.
    pub fn point_at(&self, t: f64) -> Result<ManifoldPoint> {
        let moved = self
            .start
            .matrix()
            .to_general()
            .mul(&expm(&self.direction.scale(t)));
        ManifoldPoint::classify(moved.symmetrized())
    }

    /// `γ'(t) = γ(t)·C`, computed analytically (no differencing).
    pub fn velocity_at(&self, t: f64) -> Result<SymMatrix> {
        let gamma = self.point_at(t)?;
        Ok(gamma
            .matrix()
            .to_general()
            .mul(&self.direction)
            .symmetrized())
    }
}

/// The unique geodesic arc on `P_n` with `γ(0) = A`, `γ(1) = B`:
/// direction `LOG(A⁻¹B)` through the symmetrized quotient.
pub fn geodesic_between(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<Geodesic> {
    require_spd(a)?;
    require_spd(b)?;
    let direction = log_spd_quotient(a.matrix(), b.matrix())?;
    let restricted = direction.trace().abs() <= TOL_TRACE * direction.frobenius_norm().max(1.0);
    Ok(Geodesic {
        start: a.clone(),
        direction,
        restricted_to_sl: restricted,
    })
}

/// Riemannian log map on `P_n`: the tangent `A·LOG(A⁻¹B)` at `A` whose
/// geodesic reaches `B` at `t = 1`; its norm is `d(A, B)`.
pub fn log_map(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<TangentVector> {
    let geo = geodesic_between(a, b)?;
    Ok(TangentVector::new(a.clone(), geo.initial_velocity()))
}

/// Trace-metric distance on `P_n`: `(Σ ln² μ_i)^{1/2}` with `μ_i` the
/// eigenvalues of `A⁻¹B`, read off the symmetric form `A^{-1/2} B A^{-1/2}`.
pub fn distance(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<f64> {
    require_spd(a)?;
    require_spd(b)?;
    let (_, inv_sqrt) = sqrt_and_inv_sqrt_spd(a.matrix())?;
    let inner = inv_sqrt
        .to_general()
        .mul(&b.matrix().to_general())
        .mul(&inv_sqrt.to_general())
        .symmetrized();
    let e = eig_sym(&inner)?;
    let mut sum = 0.0;
    for &mu in &e.values {
        if mu <= 0.0 {
            return Err(Error::NonPositiveSpectrum(mu));
        }
        let l = mu.ln();
        sum += l * l;
    }
    Ok(sum.sqrt())
}

/// Midpoint of the unique geodesic arc joining two SPD points; for `A = I`
/// this is `B^{1/2}`.
pub fn geometric_mean(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<ManifoldPoint> {
    geodesic_between(a, b)?.point_at(0.5)
}

/// The unique SPD congruence factor carrying `A` to `B`: the geometric mean
/// `X` of `A⁻¹` and `B`, which satisfies `X·A·X = B` (and `Xᵀ = X`).
pub fn congruence_transporter(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<SymMatrix> {
    require_spd(a)?;
    require_spd(b)?;
    let mean = geometric_mean(&a.inverse_point(), b)?;
    Ok(mean.matrix().clone())
}

fn require_spd(a: &ManifoldPoint) -> Result<()> {
    if !a.is_spd() {
        return Err(Error::NotPositiveDefinite(a.det().min(0.0)));
    }
    Ok(())
}

/// Constant speed of a geodesic: `g_γ(t)(γ', γ')` evaluated analytically.
pub fn speed_squared_at(geo: &Geodesic, t: f64) -> Result<f64> {
    let gamma = geo.point_at(t)?;
    let vel = gamma
        .matrix()
        .to_general()
        .mul(geo.direction())
        .symmetrized();
    Ok(metric_eval(&gamma, &vel, &vel))
}
