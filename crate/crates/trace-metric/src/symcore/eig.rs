//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Each rotation annihilates one off-diagonal entry; a full cycle visits every
//! `(p, q)` pair in row order. Convergence is declared when the off-diagonal
//! Frobenius norm drops below `JACOBI_TOL · ‖A‖_F`. Unconditionally stable for
//! symmetric input and entirely dependency-free, which is all this crate needs
//! at desk scale.

use crate::error::{Error, Result};
use crate::tol::{JACOBI_MAX_SWEEPS, JACOBI_TOL, TOL_PD};

use super::matrix::{GeneralMatrix, SymMatrix};

/// Eigendecomposition `A = Q · diag(values) · Qᵀ` with `Q` orthogonal and
/// eigenvalues in ascending order (eigenvectors are the columns of `Q`,
/// permuted to match).
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub vectors: GeneralMatrix,
    pub values: Vec<f64>,
}

impl SymEigen {
    /// Reassemble `Q · diag(f(λ)) · Qᵀ` with mapped eigenvalues.
    pub fn assemble(&self, mapped: &[f64]) -> SymMatrix {
        let n = self.values.len();
        assert_eq!(mapped.len(), n, "eigenvalue count mismatch");
        let mut out = GeneralMatrix::zeros(n).expect("order checked at decomposition");
        for (k, &lk) in mapped.iter().enumerate() {
            if lk == 0.0 {
                continue;
            }
            for i in 0..n {
                let qik = self.vectors[(i, k)];
                for j in 0..n {
                    out[(i, j)] += lk * qik * self.vectors[(j, k)];
                }
            }
        }
        out.symmetrized()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_abs_value(&self) -> f64 {
        self.values
            .iter()
            .fold(f64::INFINITY, |m, v| m.min(v.abs()))
    }

    /// Product of the eigenvalues.
    pub fn det(&self) -> f64 {
        self.values.iter().product()
    }
}

fn off_diagonal_norm(a: &GeneralMatrix) -> f64 {
    let n = a.order();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix.
pub fn eig_sym(a: &SymMatrix) -> Result<SymEigen> {
    let n = a.order();
    let mut w = a.to_general();
    let mut v = GeneralMatrix::identity(n)?;
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&w) <= JACOBI_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle from the stable half-angle formula.
                let theta = 0.5 * (w[(q, q)] - w[(p, p)]) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // W <- Jᵀ W J, rows then columns of the (p, q) plane.
                for j in 0..n {
                    let wpj = w[(p, j)];
                    let wqj = w[(q, j)];
                    w[(p, j)] = c * wpj - s * wqj;
                    w[(q, j)] = s * wpj + c * wqj;
                }
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = c * wip - s * wiq;
                    w[(i, q)] = s * wip + c * wiq;
                    // Accumulate V <- V J.
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
                // The rotation zeroes this pair by construction.
                w[(p, q)] = 0.0;
                w[(q, p)] = 0.0;
            }
        }
    }
    if !converged && off_diagonal_norm(&w) > JACOBI_TOL * scale {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    // Ascending eigenvalue order, stable over equal values.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        w[(i, i)]
            .partial_cmp(&w[(j, j)])
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&k| w[(k, k)]).collect();
    let vectors = GeneralMatrix::from_fn(n, |i, j| v[(i, order[j])])?;
    Ok(SymEigen { vectors, values })
}

/// Apply a spectral map `f` to a symmetric matrix, guarding the spectrum
/// first. `guard` receives the full ascending eigenvalue list.
pub fn sym_spectral_map(
    a: &SymMatrix,
    guard: impl Fn(&[f64]) -> Result<()>,
    f: impl Fn(f64) -> f64,
) -> Result<SymMatrix> {
    let e = eig_sym(a)?;
    guard(&e.values)?;
    let mapped: Vec<f64> = e.values.iter().map(|&l| f(l)).collect();
    Ok(e.assemble(&mapped))
}

/// Inverse of a non-singular symmetric matrix through its eigendecomposition.
pub fn sym_inverse(a: &SymMatrix) -> Result<SymMatrix> {
    sym_spectral_map(
        a,
        |vals| {
            let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if max == 0.0 || vals.iter().any(|v| v.abs() <= TOL_PD * max) {
                return Err(Error::NearSingular);
            }
            Ok(())
        },
        |l| 1.0 / l,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &SymEigen) -> SymMatrix {
        e.assemble(&e.values)
    }

    #[test]
    fn identity_eigens() {
        let a = SymMatrix::identity(2).unwrap();
        let e = eig_sym(&a).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
        assert_eq!(e.vectors.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn diagonal_passthrough() {
        let a = SymMatrix::diag(&[4.0, 9.0]).unwrap();
        let e = eig_sym(&a).unwrap();
        assert_eq!(e.values, vec![4.0, 9.0]);
        assert_eq!(e.vectors.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn two_by_two_hand_computed() {
        // [[2,1],[1,2]]: characteristic polynomial (2-λ)² - 1, roots 1 and 3,
        // eigenvectors (1,-1)/√2 and (1,1)/√2.
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = eig_sym(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let s = 1.0 / 2f64.sqrt();
        // Columns are defined up to sign.
        let col = |k: usize| (e.vectors[(0, k)], e.vectors[(1, k)]);
        let (x0, y0) = col(0);
        let (x1, y1) = col(1);
        assert!((x0.abs() - s).abs() < 1e-14 && (x0 + y0).abs() < 1e-14);
        assert!((x1.abs() - s).abs() < 1e-14 && (x1 - y1).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let a = SymMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, -1.5, 0.25],
            vec![3.0, 0.25, 0.5],
        ])
        .unwrap();
        let e = eig_sym(&a).unwrap();
        let r = reconstruct(&e).sub(&a).frobenius_norm();
        assert!(r < 1e-12 * a.frobenius_norm());
        let q = &e.vectors;
        let qtq = q.transpose().mul(q);
        let ortho = qtq
            .sub(&GeneralMatrix::identity(3).unwrap())
            .frobenius_norm();
        assert!(ortho < 1e-13);
        // Ascending order.
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let a = SymMatrix::zeros(3).unwrap();
        let e = eig_sym(&a).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }

    #[test]
    fn sym_inverse_round_trip() {
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let inv = sym_inverse(&a).unwrap();
        let prod = a.mul(&inv);
        let res = prod
            .sub(&GeneralMatrix::identity(2).unwrap())
            .frobenius_norm();
        assert!(res < 1e-14);
        assert!(matches!(
            sym_inverse(&SymMatrix::zeros(2).unwrap()),
            Err(Error::NearSingular)
        ));
    }
}
