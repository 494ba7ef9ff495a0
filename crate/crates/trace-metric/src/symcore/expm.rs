//! Matrix exponential by scaling and squaring.
//!
//! The input is scaled by `2^-s` until its 1-norm is at most 0.5, the Taylor
//! series is summed until a term's norm falls below `EXPM_TERM_TOL`, and the
//! result is squared `s` times. At that scaled norm the series needs fewer
//! than twenty terms, so the truncated sum is accurate to well below the
//! crate-wide reconstruction tolerance.

use crate::tol::{EXPM_SCALE_LIMIT, EXPM_TERM_TOL};

use super::matrix::GeneralMatrix;

/// `exp(C)` for any square real matrix. `exp(0) = I` exactly.
pub fn expm(c: &GeneralMatrix) -> GeneralMatrix {
    let n = c.order();
    let norm = c.one_norm();
    let squarings = if norm > EXPM_SCALE_LIMIT {
        (norm / EXPM_SCALE_LIMIT).log2().ceil() as u32
    } else {
        0
    };
    let scaled = c.scale(0.5f64.powi(squarings as i32));

    let mut sum = GeneralMatrix::identity(n).expect("order ≥ 2 by construction");
    let mut term = GeneralMatrix::identity(n).expect("order ≥ 2 by construction");
    let mut k = 1.0f64;
    // With ‖scaled‖ ≤ 0.5 the term norms decay faster than 0.5^k / k!.
    while term.frobenius_norm() >= EXPM_TERM_TOL && k < 90.0 {
        term = term.mul(&scaled).scale(1.0 / k);
        sum = sum.add(&term);
        k += 1.0;
    }

    let mut result = sum;
    for _ in 0..squarings {
        result = result.mul(&result);
    }
    result
}
