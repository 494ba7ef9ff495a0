//! Principal logarithm, fractional powers, and the SPD square root.
//!
//! The principal logarithm `LOG(M)` of a real-diagonalizable matrix with
//! strictly positive eigenvalues is `G⁻¹ diag(ln λ) G` for any diagonalizing
//! `G`; it is the unique real-diagonalizable solution of `exp(X) = M` and
//! defines the fractional powers `M^r = exp(r · LOG M)`.
//!
//! Only two shapes of input ever reach these routines here: symmetric
//! matrices, which go straight through the Jacobi solver, and quotients
//! `A⁻¹B` of positive-definite pairs, which are handled through the
//! symmetrized similarity `A^{1/2} (A⁻¹B) A^{-1/2} = A^{-1/2} B A^{-1/2}`.
//! Anything else is rejected: robust general-purpose real diagonalization is
//! deliberately out of scope.

use crate::error::{Error, Result};
use crate::tol::TOL_PD;

use super::eig::{eig_sym, sym_spectral_map, SymEigen};
use super::expm::expm;
use super::matrix::{GeneralMatrix, SymMatrix};

fn require_positive_spectrum(values: &[f64]) -> Result<()> {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for &l in values {
        if l <= 0.0 || l <= TOL_PD * max {
            return Err(Error::NonPositiveSpectrum(l));
        }
    }
    Ok(())
}

/// SPD square root `A^{1/2}`.
pub fn sqrt_spd(a: &SymMatrix) -> Result<SymMatrix> {
    sym_spectral_map(
        a,
        |vals| {
            let min = vals.first().copied().unwrap_or(0.0);
            let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if min <= 0.0 || min <= TOL_PD * max {
                return Err(Error::NotPositiveDefinite(min));
            }
            Ok(())
        },
        f64::sqrt,
    )
}

/// Square root and inverse square root of an SPD matrix from one
/// decomposition.
pub fn sqrt_and_inv_sqrt_spd(a: &SymMatrix) -> Result<(SymMatrix, SymMatrix)> {
    let e = eig_sym(a)?;
    let min = e.values.first().copied().unwrap_or(0.0);
    if min <= 0.0 || min <= TOL_PD * e.max_abs_value() {
        return Err(Error::NotPositiveDefinite(min));
    }
    let roots: Vec<f64> = e.values.iter().map(|l| l.sqrt()).collect();
    let inv_roots: Vec<f64> = roots.iter().map(|r| 1.0 / r).collect();
    Ok((e.assemble(&roots), e.assemble(&inv_roots)))
}

fn log_symmetric(e: &SymEigen) -> Result<SymMatrix> {
    require_positive_spectrum(&e.values)?;
    let logs: Vec<f64> = e.values.iter().map(|l| l.ln()).collect();
    Ok(e.assemble(&logs))
}

/// Principal logarithm of a symmetric matrix with positive spectrum. General
/// (non-symmetric) input is rejected; use [`log_principal_with_witness`] when
/// an SPD witness is available.
pub fn log_principal(m: &GeneralMatrix) -> Result<GeneralMatrix> {
    let asym = m.max_asymmetry();
    if asym > 1e-12 * m.max_abs().max(1.0) {
        return Err(Error::NotDiagonalizable(asym));
    }
    let sym = m.symmetrized();
    Ok(log_symmetric(&eig_sym(&sym)?)?.to_general())
}

/// Principal logarithm of `M` given an SPD witness `A` with `A·M` symmetric
/// (the shape of every quotient `A⁻¹B` of an SPD pair). The similarity
/// `S M S⁻¹` with `S = A^{1/2}` is then symmetric, so the Jacobi solver
/// applies and `LOG(M) = S⁻¹ · LOG(S M S⁻¹) · S`.
pub fn log_principal_with_witness(m: &GeneralMatrix, witness: &SymMatrix) -> Result<GeneralMatrix> {
    let (s, s_inv) = sqrt_and_inv_sqrt_spd(witness)?;
    let conjugated = s.to_general().mul(m).mul(&s_inv.to_general());
    let asym = conjugated.max_asymmetry();
    if asym > 1e-8 * conjugated.max_abs().max(1.0) {
        return Err(Error::NotDiagonalizable(asym));
    }
    let log_inner = log_symmetric(&eig_sym(&conjugated.symmetrized())?)?;
    Ok(s_inv
        .to_general()
        .mul(&log_inner.to_general())
        .mul(&s.to_general()))
}

/// `LOG(A⁻¹B)` for SPD `A`, `B`, computed without ever eigendecomposing the
/// non-symmetric quotient: the spectrum is read off `A^{-1/2} B A^{-1/2}`.
pub fn log_spd_quotient(a: &SymMatrix, b: &SymMatrix) -> Result<GeneralMatrix> {
    let (s, s_inv) = sqrt_and_inv_sqrt_spd(a)?;
    let inner = s_inv
        .to_general()
        .mul(&b.to_general())
        .mul(&s_inv.to_general())
        .symmetrized();
    let log_inner = log_symmetric(&eig_sym(&inner)?)?;
    // A⁻¹B = A^{-1/2} (A^{-1/2} B A^{-1/2}) A^{1/2}
    Ok(s_inv
        .to_general()
        .mul(&log_inner.to_general())
        .mul(&s.to_general()))
}

/// Fractional power `M^r = exp(r · LOG M)` on the symmetric path.
pub fn power_frac(m: &GeneralMatrix, r: f64) -> Result<GeneralMatrix> {
    Ok(expm(&log_principal(m)?.scale(r)))
}

/// `A^r` for SPD `A` through the spectral map; cheaper and exactly symmetric.
pub fn power_spd(a: &SymMatrix, r: f64) -> Result<SymMatrix> {
    sym_spectral_map(
        a,
        |vals| {
            let min = vals.first().copied().unwrap_or(0.0);
            let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if min <= 0.0 || min <= TOL_PD * max {
                return Err(Error::NotPositiveDefinite(min));
            }
            Ok(())
        },
        |l| l.powf(r),
    )
}
