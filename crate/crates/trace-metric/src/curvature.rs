//! Curvature of the trace metric: the (0,4) Riemann tensor
//! `R_XYZW(K) = ¼ tr([K⁻¹X, K⁻¹Y]·[K⁻¹Z, K⁻¹W])`, sectional curvature,
//! the Ricci tensor `Ric_Q(X,Z) = ¼ tr(Q⁻¹X) tr(Q⁻¹Z) - (n/4) g_Q(X,Z)`,
//! the constant scalar curvature `-(n-1)n(n+2)/8`, and the Einstein property
//! `Ric = -(n/4) g` on the unit-determinant slices.
//!
//! The sign convention is pinned by two anchors: sectional curvature
//! `K(X,Y) = R_XYXY / (g(X,X) g(Y,Y) - g(X,Y)²)` is non-positive on the SPD
//! cone and equals exactly `-1/2` on the trace-free planes of `SLP_2`.

use crate::error::{Error, Result};
use crate::manifold::{metric_eval, orthonormal_basis, project_tangent_sl, ManifoldPoint};
use crate::rng::Rng;
use crate::sample;
use crate::symcore::{congruence_to_canonical, inverse_general, SymMatrix};
use crate::tol::TOL_PLANE;

/// Summary of curvature checks at a base point: the scalar curvature from
/// the basis contraction and the worst Einstein residual
/// `|Ric(X,Z) + (n/4) g(X,Z)|` over sampled trace-constrained tangent pairs.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub base: ManifoldPoint,
    pub scalar: f64,
    pub einstein_residual: f64,
    pub samples: usize,
}

/// Evaluation mode for [`scalar_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    /// The constant `-(n-1)n(n+2)/8`.
    ClosedForm,
    /// Contraction of the Ricci tensor over a `g`-orthonormal tangent basis
    /// transported to the point, causal signs included.
    Summed,
}

/// The (0,4) Riemann tensor of the trace metric at `K`.
pub fn riemann(
    k: &ManifoldPoint,
    x: &SymMatrix,
    y: &SymMatrix,
    z: &SymMatrix,
    w: &SymMatrix,
) -> f64 {
    let inv = k.inverse_matrix();
    let first = inv.mul(x).commutator(&inv.mul(y));
    let second = inv.mul(z).commutator(&inv.mul(w));
    0.25 * first.mul(&second).trace()
}

/// Sectional curvature of the plane spanned by `(X, Y)` at `K`:
/// `R_XYXY / (g(X,X) g(Y,Y) - g(X,Y)²)`. Degenerate planes are rejected, not
/// regularized; on the SPD cone every independent pair is non-degenerate.
pub fn sectional(k: &ManifoldPoint, x: &SymMatrix, y: &SymMatrix) -> Result<f64> {
    let gxx = metric_eval(k, x, x);
    let gyy = metric_eval(k, y, y);
    let gxy = metric_eval(k, x, y);
    let den = gxx * gyy - gxy * gxy;
    let scale = x.frobenius_norm().powi(2) * y.frobenius_norm().powi(2);
    if den.abs() <= TOL_PLANE * scale {
        return Err(Error::DegeneratePlane(den));
    }
    Ok(riemann(k, x, y, x, y) / den)
}

/// The Ricci tensor of the trace metric at `Q`.
pub fn ricci(q: &ManifoldPoint, x: &SymMatrix, z: &SymMatrix) -> f64 {
    let n = q.order() as f64;
    let inv = q.inverse_matrix();
    let tx = inv.mul(x).trace();
    let tz = inv.mul(z).trace();
    0.25 * tx * tz - 0.25 * n * metric_eval(q, x, z)
}

/// Scalar curvature at `Q`, by either route. The summed route transports the
/// orthonormal frame at `J_p` to `Q` with the inverse of the canonical
/// congruence and contracts `Ric` with the causal signs.
pub fn scalar_at(q: &ManifoldPoint, mode: ScalarMode) -> Result<f64> {
    let n = q.order();
    match mode {
        ScalarMode::ClosedForm => Ok(scalar_closed_form(n)),
        ScalarMode::Summed => {
            let (c, p) = congruence_to_canonical(q.matrix())?;
            let c_inv = inverse_general(&c)?;
            let c_inv_t = c_inv.transpose();
            let mut sum = 0.0;
            for element in orthonormal_basis(n, p)? {
                let transported = c_inv
                    .mul(&element.matrix.to_general())
                    .mul(&c_inv_t)
                    .symmetrized();
                sum += element.causal_sign * ricci(q, &transported, &transported);
            }
            Ok(sum)
        }
    }
}

/// `-(n-1)n(n+2)/8`.
pub fn scalar_closed_form(n: usize) -> f64 {
    let n = n as f64;
    -(n - 1.0) * n * (n + 2.0) / 8.0
}

/// Sample the Einstein property `Ric = -(n/4) g` at a point of the
/// unit-determinant slice: tangents are drawn from the given seed and
/// trace-constrained by projection, and the report carries the worst
/// residual together with the summed scalar curvature.
pub fn einstein_check(q: &ManifoldPoint, samples: usize, seed: u64) -> Result<CurvatureReport> {
    if !q.on_unit_det_slice() {
        return Err(Error::OffDeterminantSlice(q.det()));
    }
    let n = q.order();
    let quarter_n = n as f64 / 4.0;
    let mut rng = Rng::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = project_tangent_sl(q, &sample::sym(&mut rng, n, 1.0));
        let z = project_tangent_sl(q, &sample::sym(&mut rng, n, 1.0));
        let residual =
            ricci(q, x.value(), z.value()) + quarter_n * metric_eval(q, x.value(), z.value());
        worst = worst.max(residual.abs());
    }
    Ok(CurvatureReport {
        base: q.clone(),
        scalar: scalar_at(q, ScalarMode::Summed)?,
        einstein_residual: worst,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::orthonormal_basis;

    fn point(m: SymMatrix) -> ManifoldPoint {
        ManifoldPoint::classify(m).unwrap()
    }

    fn identity_point(n: usize) -> ManifoldPoint {
        point(SymMatrix::identity(n).unwrap())
    }

    #[test]
    fn riemann_vanishes_on_equal_or_commuting_arguments() {
        let k = identity_point(3);
        let x = SymMatrix::diag(&[1.0, -0.5, 0.25]).unwrap();
        let y = SymMatrix::diag(&[0.3, 0.7, -0.1]).unwrap();
        // X = Y: antisymmetry.
        assert_eq!(riemann(&k, &x, &x, &y, &x), 0.0);
        // Commuting diagonal arguments: zero commutator.
        assert_eq!(riemann(&k, &x, &y, &x, &y), 0.0);
    }

    #[test]
    fn riemann_hand_value_on_trace_free_plane() {
        // At I₂ with X = diag(1,-1)/√2 and Y = S^(1,2): [X,Y] = E12 - E21,
        // whose square has trace -2, so R_XYXY = -1/2.
        let k = identity_point(2);
        let s = 1.0 / 2f64.sqrt();
        let x = SymMatrix::diag(&[s, -s]).unwrap();
        let y = SymMatrix::from_rows(&[vec![0.0, s], vec![s, 0.0]]).unwrap();
        assert!((riemann(&k, &x, &y, &x, &y) + 0.5).abs() < 1e-15);
        assert!((sectional(&k, &x, &y).unwrap() + 0.5).abs() < 1e-14);
    }

    #[test]
    fn sectional_of_commuting_plane_is_zero() {
        let k = identity_point(3);
        let x = SymMatrix::diag(&[1.0, -0.5, 0.25]).unwrap();
        let y = SymMatrix::diag(&[0.3, 0.7, -0.1]).unwrap();
        assert_eq!(sectional(&k, &x, &y).unwrap(), 0.0);
    }

    #[test]
    fn sectional_rejects_degenerate_plane() {
        let k = identity_point(2);
        let x = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        let y = x.scale(3.0);
        assert!(matches!(
            sectional(&k, &x, &y),
            Err(Error::DegeneratePlane(_))
        ));
    }

    #[test]
    fn ricci_closed_form_cases() {
        let n = 3;
        let id = identity_point(n);
        // X = λQ sits in the kernel.
        let q = SymMatrix::identity(n).unwrap();
        assert!(ricci(&id, &q, &q).abs() < 1e-15);

        // Traceless X: Ric(X,X) = -(n/4)·tr(X²).
        let x = SymMatrix::diag(&[1.0, -0.5, -0.5]).unwrap();
        let expected = -(n as f64 / 4.0) * x.mul(&x).trace();
        assert!((ricci(&id, &x, &x) - expected).abs() < 1e-14);
    }

    #[test]
    fn ricci_is_contraction_of_riemann() {
        // Ric(X,Z) = Σ_k ε_k R(X, B_k, Z, B_k) over the orthonormal frame.
        let n = 3;
        let p = 2;
        let j = point(SymMatrix::canonical_j(n, p).unwrap());
        let basis = orthonormal_basis(n, p).unwrap();
        let x = SymMatrix::from_rows(&[
            vec![0.5, 0.2, -0.1],
            vec![0.2, -0.3, 0.4],
            vec![-0.1, 0.4, 0.8],
        ])
        .unwrap();
        let z = SymMatrix::from_rows(&[
            vec![-0.2, 0.6, 0.0],
            vec![0.6, 0.1, -0.5],
            vec![0.0, -0.5, 0.3],
        ])
        .unwrap();
        let contracted: f64 = basis
            .iter()
            .map(|b| b.causal_sign * riemann(&j, &x, &b.matrix, &z, &b.matrix))
            .sum();
        assert!((contracted - ricci(&j, &x, &z)).abs() < 1e-13);
    }

    #[test]
    fn scalar_closed_form_values() {
        assert_eq!(scalar_closed_form(2), -1.0);
        assert_eq!(scalar_closed_form(3), -15.0 / 4.0);
        assert_eq!(scalar_closed_form(4), -9.0);
    }

    #[test]
    fn summed_scalar_matches_closed_form() {
        // At the identity.
        let id = identity_point(3);
        let s = scalar_at(&id, ScalarMode::Summed).unwrap();
        assert!((s - scalar_closed_form(3)).abs() < 1e-10);

        // At an indefinite point of GLSym₄(2).
        let mut rng = Rng::new(99);
        let q = point(sample::glsym(&mut rng, 4, 2));
        let s = scalar_at(&q, ScalarMode::Summed).unwrap();
        assert!((s + 9.0).abs() < 1e-8, "summed scalar {s}");
    }

    #[test]
    fn einstein_residual_is_tiny_on_slices() {
        let mut rng = Rng::new(123);
        // SPD slice.
        let q = point(sample::sl_spd(&mut rng, 3));
        let report = einstein_check(&q, 200, 5).unwrap();
        assert!(
            report.einstein_residual < 1e-10,
            "residual {}",
            report.einstein_residual
        );
        assert!((report.scalar - scalar_closed_form(3)).abs() < 1e-8);

        // Indefinite slice.
        let q2 = point(sample::slsym(&mut rng, 3, 2));
        let report2 = einstein_check(&q2, 200, 6).unwrap();
        assert!(
            report2.einstein_residual < 1e-10,
            "residual {}",
            report2.einstein_residual
        );

        // Off-slice points are rejected.
        let off = point(SymMatrix::diag(&[2.0, 1.0]).unwrap());
        assert!(matches!(
            einstein_check(&off, 10, 0),
            Err(Error::OffDeterminantSlice(_))
        ));
    }
}
