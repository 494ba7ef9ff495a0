//! The manifolds `GLSym_n(p)`, `SLSym_n(p)`, `P_n`, `SLP_n`: point
//! classification, the trace metric tensor, the orthonormal tangent frame at
//! `J_p`, tangent-space constraints, and the isometric product splitting
//! `GLSym_n(p) ≅ SLSym_n(p) × R`.
//!
//! The metric is `g_A(V, W) = tr(A⁻¹ V A⁻¹ W)`; on the positive-definite
//! component it is Riemannian, elsewhere it has signature
//! `(n(n+1)/2 - p(n-p), p(n-p))`.

use crate::error::{Error, Result};
use crate::symcore::{eig_sym, GeneralMatrix, SymMatrix};
use crate::tol::{TOL_DET, TOL_PD, TOL_TRACE};

/// Determinant of the slice representative: `(-1)^(n-p)`.
fn slice_det_target(n: usize, p: usize) -> f64 {
    if (n - p).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A non-singular symmetric matrix tagged with its classification: the
/// signature index `p`, the determinant, and membership of the
/// unit-determinant slice `SLSym_n(p)` (determinant `(-1)^(n-p)`).
///
/// The inverse is computed once, from the same eigendecomposition that
/// classifies the point, and carried along; every classification error
/// therefore surfaces at construction.
#[derive(Debug, Clone)]
pub struct ManifoldPoint {
    matrix: SymMatrix,
    inverse: SymMatrix,
    p: usize,
    det: f64,
    on_unit_det_slice: bool,
}

impl ManifoldPoint {
    /// Classify a symmetric matrix: signature index, determinant, slice
    /// membership. Near-singular input is rejected.
    pub fn classify(matrix: SymMatrix) -> Result<Self> {
        let n = matrix.order();
        let e = eig_sym(&matrix)?;
        let max = e.max_abs_value();
        if max == 0.0 || e.values.iter().any(|l| l.abs() <= TOL_PD * max) {
            return Err(Error::NearSingular);
        }
        let p = e.values.iter().filter(|&&l| l > 0.0).count();
        let det = e.det();
        let inv_values: Vec<f64> = e.values.iter().map(|l| 1.0 / l).collect();
        let inverse = e.assemble(&inv_values);
        let target = slice_det_target(n, p);
        Ok(ManifoldPoint {
            matrix,
            inverse,
            p,
            det,
            on_unit_det_slice: (det - target).abs() < TOL_DET,
        })
    }

    /// Classify and require membership of the positive-definite cone `P_n`.
    pub fn spd(matrix: SymMatrix) -> Result<Self> {
        let point = Self::classify(matrix)?;
        if !point.is_spd() {
            return Err(Error::NotPositiveDefinite(point.det.min(0.0)));
        }
        Ok(point)
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &SymMatrix {
        &self.inverse
    }

    /// The point `A⁻¹`, classified; exact given the stored inverse.
    pub fn inverse_point(&self) -> ManifoldPoint {
        let n = self.order();
        let det = 1.0 / self.det;
        let target = slice_det_target(n, self.p);
        ManifoldPoint {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            p: self.p,
            det,
            on_unit_det_slice: (det - target).abs() < TOL_DET,
        }
    }

    /// The point `c·A` for `c > 0`; exact, no re-decomposition. Positive
    /// scaling preserves the signature.
    pub fn scaled_positive(&self, factor: f64) -> Result<ManifoldPoint> {
        if factor <= 0.0 || !factor.is_finite() {
            return Err(Error::InvalidArgument(
                "scale factor must be positive and finite",
            ));
        }
        let n = self.order();
        let det = self.det * factor.powi(n as i32);
        let target = slice_det_target(n, self.p);
        Ok(ManifoldPoint {
            matrix: self.matrix.scale(factor),
            inverse: self.inverse.scale(1.0 / factor),
            p: self.p,
            det,
            on_unit_det_slice: (det - target).abs() < TOL_DET,
        })
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    /// Signature index: the count of positive eigenvalues.
    pub fn signature_p(&self) -> usize {
        self.p
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn on_unit_det_slice(&self) -> bool {
        self.on_unit_det_slice
    }

    pub fn is_spd(&self) -> bool {
        self.p == self.order()
    }
}

/// A tangent vector attached to a base point. `trace_free_at_base` records
/// whether `tr(Q⁻¹V) = 0` within tolerance, i.e. whether the vector is
/// tangent to the unit-determinant slice through the base.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: ManifoldPoint,
    value: SymMatrix,
    trace_free_at_base: bool,
}

impl TangentVector {
    pub fn new(base: ManifoldPoint, value: SymMatrix) -> Self {
        let t = base.inverse_matrix().mul(&value).trace();
        let trace_free = t.abs() <= TOL_TRACE * value.frobenius_norm();
        TangentVector {
            base,
            value,
            trace_free_at_base: trace_free,
        }
    }

    pub fn base(&self) -> &ManifoldPoint {
        &self.base
    }

    pub fn value(&self) -> &SymMatrix {
        &self.value
    }

    pub fn trace_free_at_base(&self) -> bool {
        self.trace_free_at_base
    }

    /// `√g(V, V)` at the base; meaningful where `g` is positive definite.
    pub fn norm(&self) -> f64 {
        metric_eval(&self.base, &self.value, &self.value).sqrt()
    }
}

/// One element of the orthonormal tangent frame at `J_p`, with its causal
/// sign `g(b, b) ∈ {+1, -1}`.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub matrix: SymMatrix,
    pub causal_sign: f64,
}

/// The trace metric `g_A(V, W) = tr(A⁻¹ V A⁻¹ W)`; bilinear and symmetric in
/// `(V, W)`.
pub fn metric_eval(base: &ManifoldPoint, v: &SymMatrix, w: &SymMatrix) -> f64 {
    let inv = base.inverse_matrix();
    inv.mul(v).mul(&inv.mul(w)).trace()
}

/// The orthonormal basis of the tangent space `Sym_n` at `J_p`:
/// `E^(i,i)` on the diagonal and `S^(i,j) = (E^(i,j) + E^(j,i)) / √2` off it.
/// Exactly the `S^(i,j)` with `i ≤ p < j` (1-based) are time-like.
pub fn orthonormal_basis(n: usize, p: usize) -> Result<Vec<BasisElement>> {
    if p > n {
        return Err(Error::SignatureOutOfRange { p, n });
    }
    let mut basis = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        let mut m = SymMatrix::zeros(n)?;
        m.set_sym(i, i, 1.0);
        basis.push(BasisElement {
            matrix: m,
            causal_sign: 1.0,
        });
    }
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = SymMatrix::zeros(n)?;
            m.set_sym(i, j, inv_sqrt2);
            let sign = if i < p && j >= p { -1.0 } else { 1.0 };
            basis.push(BasisElement {
                matrix: m,
                causal_sign: sign,
            });
        }
    }
    Ok(basis)
}

/// Project a symmetric matrix onto the tangent space of the unit-determinant
/// slice at `Q`: subtract the trace component, `V - (tr(Q⁻¹V)/n)·Q`.
/// Idempotent, and the identity on already trace-free input.
pub fn project_tangent_sl(q: &ManifoldPoint, v: &SymMatrix) -> TangentVector {
    let n = q.order() as f64;
    let t = q.inverse_matrix().mul(v).trace();
    let projected = v.sub(&q.matrix().scale(t / n));
    TangentVector::new(q.clone(), projected)
}

/// Split an SPD point into its unit-determinant part and line coordinate:
/// `A ↦ (A / det(A)^(1/n), ln(det A) / √n)`. Inverse of [`product_join`].
pub fn product_split(a: &ManifoldPoint) -> Result<(ManifoldPoint, f64)> {
    if !a.is_spd() {
        return Err(Error::NotPositiveDefinite(a.det().min(0.0)));
    }
    let n = a.order() as f64;
    let det = a.det();
    let q = a.matrix().scale(det.powf(-1.0 / n));
    let x = det.ln() / n.sqrt();
    Ok((ManifoldPoint::classify(q)?, x))
}

/// Rejoin a unit-determinant SPD point and a line coordinate:
/// `(Q, x) ↦ e^(x/√n) · Q`. The map is an isometry onto `P_n` for the
/// product of `g` with the Euclidean line metric.
pub fn product_join(q: &ManifoldPoint, x: f64) -> Result<ManifoldPoint> {
    if !q.is_spd() {
        return Err(Error::NotPositiveDefinite(q.det().min(0.0)));
    }
    if !q.on_unit_det_slice() {
        return Err(Error::OffDeterminantSlice(q.det()));
    }
    let n = q.order() as f64;
    ManifoldPoint::classify(q.matrix().scale((x / n.sqrt()).exp()))
}

/// The isometry `A ↦ -A` from `GLSym_n(p)` onto `GLSym_n(n-p)`. Exact: no
/// re-decomposition is needed, every classification field maps through.
pub fn negate(a: &ManifoldPoint) -> ManifoldPoint {
    let n = a.order();
    let p = n - a.p;
    let det = if n.is_multiple_of(2) { a.det } else { -a.det };
    let target = slice_det_target(n, p);
    ManifoldPoint {
        matrix: a.matrix.neg(),
        inverse: a.inverse.neg(),
        p,
        det,
        on_unit_det_slice: (det - target).abs() < TOL_DET,
    }
}

/// Pushforward of [`product_join`] at `(Q, x)` applied to a tangent pair
/// `(V, ξ)`: `e^(x/√n) (V + (ξ/√n) Q)`. Used to exercise the product-isometry
/// property of the splitting.
pub fn product_pushforward(q: &ManifoldPoint, x: f64, v: &SymMatrix, xi: f64) -> SymMatrix {
    let n = q.order() as f64;
    v.add(&q.matrix().scale(xi / n.sqrt()))
        .scale((x / n.sqrt()).exp())
}

/// Congruence `A ↦ C A Cᵀ`, symmetrized against rounding.
pub fn congruence(c: &GeneralMatrix, a: &SymMatrix) -> SymMatrix {
    c.mul(&a.to_general()).mul(&c.transpose()).symmetrized()
}
