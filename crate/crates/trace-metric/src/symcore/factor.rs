//! Polar decomposition, signature, and congruence normalization to `J_p`.

use crate::error::{Error, Result};
use crate::tol::TOL_PD;

use super::eig::eig_sym;
use super::logm::sqrt_and_inv_sqrt_spd;
use super::matrix::{GeneralMatrix, Signature, SymMatrix};

/// Polar decomposition `A = U·Q` with `U` orthogonal and `Q` SPD. The pair is
/// unique for non-singular `A`: `Q = (AᵀA)^{1/2}`, `U = A·Q⁻¹`.
pub fn polar_decompose(a: &GeneralMatrix) -> Result<(GeneralMatrix, SymMatrix)> {
    let gram = a.transpose().mul(a).symmetrized();
    let (q, q_inv) = match sqrt_and_inv_sqrt_spd(&gram) {
        Ok(pair) => pair,
        // AᵀA has non-positive spectrum only when A is (near) singular.
        Err(_) => return Err(Error::NearSingular),
    };
    let u = a.mul(&q_inv.to_general());
    Ok((u, q))
}

/// Inverse of a non-singular general matrix via its polar factors:
/// `A⁻¹ = Q⁻¹ Uᵀ`. One eigendecomposition, no pivoting.
pub fn inverse_general(a: &GeneralMatrix) -> Result<GeneralMatrix> {
    let gram = a.transpose().mul(a).symmetrized();
    let e = eig_sym(&gram)?;
    let min = e.values.first().copied().unwrap_or(0.0);
    if min <= 0.0 || min <= TOL_PD * e.max_abs_value() {
        return Err(Error::NearSingular);
    }
    let inv_roots: Vec<f64> = e.values.iter().map(|l| 1.0 / l.sqrt()).collect();
    let q_inv = e.assemble(&inv_roots);
    let u = a.mul(&q_inv.to_general());
    // A⁻¹ = (UQ)⁻¹ = Q⁻¹Uᵀ
    Ok(q_inv.to_general().mul(&u.transpose()))
}

/// `|det A|` for a general matrix, from the singular values.
pub fn abs_det_general(a: &GeneralMatrix) -> Result<f64> {
    let gram = a.transpose().mul(a).symmetrized();
    let e = eig_sym(&gram)?;
    let mut det = 1.0;
    for &l in &e.values {
        if l <= 0.0 {
            return Err(Error::NearSingular);
        }
        det *= l.sqrt();
    }
    Ok(det)
}

/// Eigenvalue sign counts of a non-singular symmetric matrix.
pub fn signature_of(a: &SymMatrix) -> Result<Signature> {
    let e = eig_sym(a)?;
    let max = e.max_abs_value();
    if max == 0.0 || e.values.iter().any(|l| l.abs() <= TOL_PD * max) {
        return Err(Error::NearSingular);
    }
    let positive = e.values.iter().filter(|&&l| l > 0.0).count();
    Ok(Signature {
        positive,
        negative: a.order() - positive,
    })
}

/// A congruence `C` with `C·A·Cᵀ = J_p`, together with `p`.
///
/// From `A = QΛQᵀ`: take `C = P·|Λ|^{-1/2}·Qᵀ` where the permutation `P`
/// lists positive eigenvalues first, each block keeping the solver's
/// ascending order (a stable choice, so reruns are bit-identical).
pub fn congruence_to_canonical(a: &SymMatrix) -> Result<(GeneralMatrix, usize)> {
    let n = a.order();
    let e = eig_sym(a)?;
    let max = e.max_abs_value();
    if max == 0.0 || e.values.iter().any(|l| l.abs() <= TOL_PD * max) {
        return Err(Error::NearSingular);
    }

    let positives: Vec<usize> = (0..n).filter(|&k| e.values[k] > 0.0).collect();
    let negatives: Vec<usize> = (0..n).filter(|&k| e.values[k] < 0.0).collect();
    let p = positives.len();
    let order: Vec<usize> = positives.into_iter().chain(negatives).collect();

    let mut c = GeneralMatrix::zeros(n)?;
    for (row, &k) in order.iter().enumerate() {
        let w = 1.0 / e.values[k].abs().sqrt();
        for j in 0..n {
            c[(row, j)] = w * e.vectors[(j, k)];
        }
    }
    Ok((c, p))
}
