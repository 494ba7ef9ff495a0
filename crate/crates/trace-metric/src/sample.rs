//! Seeded random matrix generators for tests and verification sweeps.
//!
//! Conditioning is kept moderate on purpose: positive-definite samples are
//! exponentials of symmetric matrices with bounded entries, so eigenvalue
//! spreads stay within a few orders of magnitude and the crate-wide
//! tolerances are meaningful.

use crate::rng::Rng;
use crate::symcore::{eig_sym, expm, GeneralMatrix, SymMatrix};

/// Symmetric matrix with entries uniform in `[-scale, scale]`.
pub fn sym(rng: &mut Rng, n: usize, scale: f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(n).expect("order ≥ 2");
    for i in 0..n {
        for j in i..n {
            m.set_sym(i, j, rng.range(-scale, scale));
        }
    }
    m
}

/// SPD matrix `exp(S)` with `S` symmetric, entries uniform in
/// `[-spread, spread]`.
pub fn spd(rng: &mut Rng, n: usize, spread: f64) -> SymMatrix {
    expm(&sym(rng, n, spread).to_general()).symmetrized()
}

/// SPD matrix scaled to determinant exactly-1 up to rounding.
pub fn sl_spd(rng: &mut Rng, n: usize) -> SymMatrix {
    slsym(rng, n, n)
}

/// Random orthogonal matrix: eigenvector frame of a random symmetric matrix.
pub fn orthogonal(rng: &mut Rng, n: usize) -> GeneralMatrix {
    let e = eig_sym(&sym(rng, n, 1.0)).expect("random symmetric matrix decomposes");
    e.vectors
}

/// Point of `GLSym_n(p)`: `Q · diag(λ) · Qᵀ` with `p` eigenvalues in
/// `[0.4, 2.5]` and `n - p` in `[-2.5, -0.4]`.
pub fn glsym(rng: &mut Rng, n: usize, p: usize) -> SymMatrix {
    assert!(p <= n, "signature index out of range");
    let q = orthogonal(rng, n);
    let vals: Vec<f64> = (0..n)
        .map(|i| {
            let mag = rng.range(0.4, 2.5);
            if i < p {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let mut d = SymMatrix::zeros(n).expect("order ≥ 2");
    for (i, &v) in vals.iter().enumerate() {
        d.set_sym(i, i, v);
    }
    q.mul(&d.to_general()).mul(&q.transpose()).symmetrized()
}

/// Point of `SLSym_n(p)`: a `glsym` sample rescaled so `|det| = 1`, which
/// lands the determinant exactly on `(-1)^(n-p)`.
pub fn slsym(rng: &mut Rng, n: usize, p: usize) -> SymMatrix {
    let a = glsym(rng, n, p);
    let e = eig_sym(&a).expect("sample decomposes");
    let abs_det: f64 = e.values.iter().map(|l| l.abs()).product();
    a.scale(abs_det.powf(-1.0 / n as f64))
}

/// Non-singular general matrix; entries uniform in `[-scale, scale]`,
/// resampled until the smallest singular value clears a safety floor.
pub fn nonsingular(rng: &mut Rng, n: usize, scale: f64) -> GeneralMatrix {
    loop {
        let mut g = GeneralMatrix::zeros(n).expect("order ≥ 2");
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = rng.range(-scale, scale);
            }
        }
        let gram = g.transpose().mul(&g).symmetrized();
        if let Ok(e) = eig_sym(&gram) {
            let min = e.values.first().copied().unwrap_or(0.0);
            if min > 1e-3 * scale * scale {
                return g;
            }
        }
    }
}
