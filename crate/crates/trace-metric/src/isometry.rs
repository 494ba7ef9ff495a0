//! The isometry group of the SPD cone under the trace metric.
//!
//! Three generators act on `P_n`: congruences `Γ_C: A ↦ CACᵀ`, the inversion
//! `φ: A ↦ A⁻¹`, and the determinant scaling `ψ: A ↦ |det A|^{-2/n} A`.
//! Every isometry is exactly one of `Γ_M`, `Γ_M∘φ`, `Γ_M∘ψ`, `Γ_M∘φ∘ψ`, so a
//! free word over the generators always rewrites to a normal form
//! `(M, a, b)` with flags `a` (inversion) and `b` (scaling). The rewrite
//! rules are
//!
//! - `φ ∘ Γ_C = Γ_{C^{-T}} ∘ φ`
//! - `ψ ∘ Γ_C = Γ_{|det C|^{-2/n} C} ∘ ψ`
//! - `φ ∘ ψ = ψ ∘ φ`, `φ² = ψ² = id`,
//!
//! together with `Γ_M = Γ_{-M}` (quotiented out by a sign anchor) and, for
//! `n = 2` only, `ψ = Γ_W ∘ φ` with `W` the quarter-turn rotation, which
//! collapses the scaling flag entirely.
//!
//! [`identify`] inverts the classification numerically: given a black-box
//! map of `P_n` it recovers `(M, a, b)` from the induced action on the
//! product splitting and on the tangent space at the identity, then verifies
//! the candidate pointwise before returning it.

use crate::error::{Error, Result};
use crate::manifold::{congruence, product_split, ManifoldPoint};
use crate::rng::Rng;
use crate::sample;
use crate::symcore::{
    abs_det_general, eig_sym, expm, inverse_general, sqrt_spd, GeneralMatrix, SymMatrix,
};
use crate::tol::{TOL_ID, TOL_PD};

/// One generator letter of a free isometry word.
#[derive(Debug, Clone)]
pub enum IsometryLetter {
    /// Congruence by a non-singular matrix.
    Congr(GeneralMatrix),
    /// Inversion `A ↦ A⁻¹`.
    Inv,
    /// Determinant scaling `A ↦ |det A|^{-2/n} A`.
    Psi,
}

/// A composition of generator letters; the first letter acts last
/// (function-composition order).
#[derive(Debug, Clone, Default)]
pub struct IsometryWord {
    pub letters: Vec<IsometryLetter>,
}

impl IsometryWord {
    pub fn new(letters: Vec<IsometryLetter>) -> Self {
        IsometryWord { letters }
    }

    /// Apply the word to an SPD point, innermost letter first.
    pub fn apply(&self, a: &ManifoldPoint) -> Result<ManifoldPoint> {
        require_spd(a)?;
        let mut x = a.clone();
        for letter in self.letters.iter().rev() {
            x = apply_letter(letter, &x)?;
        }
        Ok(x)
    }
}

/// Normal form `A ↦ Γ_M(φᵃ(ψᵇ(A)))` of an isometry of `P_n`.
///
/// `M` is sign-normalized (first entry above the rounding floor is positive)
/// and for `n = 2` the `ψ` flag is always folded away.
#[derive(Debug, Clone)]
pub struct CanonicalIsometry {
    m: GeneralMatrix,
    inv_flag: bool,
    psi_flag: bool,
}

impl CanonicalIsometry {
    /// Build and normalize; rejects singular `M`.
    pub fn new(m: GeneralMatrix, inv_flag: bool, psi_flag: bool) -> Result<Self> {
        require_nonsingular(&m)?;
        Ok(normalize(m, inv_flag, psi_flag))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(CanonicalIsometry {
            m: GeneralMatrix::identity(n)?,
            inv_flag: false,
            psi_flag: false,
        })
    }

    pub fn m(&self) -> &GeneralMatrix {
        &self.m
    }

    pub fn inv_flag(&self) -> bool {
        self.inv_flag
    }

    pub fn psi_flag(&self) -> bool {
        self.psi_flag
    }

    /// Apply to an SPD point: `ψ` first, then `φ`, then the congruence.
    pub fn apply(&self, a: &ManifoldPoint) -> Result<ManifoldPoint> {
        require_spd(a)?;
        let mut x = a.clone();
        if self.psi_flag {
            x = apply_psi(&x)?;
        }
        if self.inv_flag {
            x = x.inverse_point();
        }
        ManifoldPoint::classify(congruence(&self.m, x.matrix()))
    }
}

fn require_spd(a: &ManifoldPoint) -> Result<()> {
    if !a.is_spd() {
        return Err(Error::NotPositiveDefinite(a.det().min(0.0)));
    }
    Ok(())
}

fn require_nonsingular(m: &GeneralMatrix) -> Result<()> {
    let gram = m.transpose().mul(m).symmetrized();
    let e = eig_sym(&gram)?;
    let min = e.values.first().copied().unwrap_or(0.0);
    if min <= 0.0 || min <= TOL_PD * e.max_abs_value() {
        return Err(Error::NearSingular);
    }
    Ok(())
}

/// `ψ(A) = |det A|^{-2/n} A`; exact on the stored classification.
pub fn apply_psi(a: &ManifoldPoint) -> Result<ManifoldPoint> {
    let n = a.order() as f64;
    a.scaled_positive(a.det().abs().powf(-2.0 / n))
}

fn apply_letter(letter: &IsometryLetter, x: &ManifoldPoint) -> Result<ManifoldPoint> {
    match letter {
        IsometryLetter::Congr(c) => {
            require_nonsingular(c)?;
            ManifoldPoint::classify(congruence(c, x.matrix()))
        }
        IsometryLetter::Inv => Ok(x.inverse_point()),
        IsometryLetter::Psi => apply_psi(x),
    }
}

/// The quarter-turn rotation absorbing `ψ` when `n = 2`.
fn quarter_turn() -> GeneralMatrix {
    GeneralMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).expect("fixed 2x2 shape")
}

fn normalize(mut m: GeneralMatrix, mut inv_flag: bool, mut psi_flag: bool) -> CanonicalIsometry {
    let n = m.order();
    if n == 2 && psi_flag {
        // ψ = Γ_W ∘ φ on P₂, and φ ∘ Γ_W = Γ_W ∘ φ (W^{-T} = W), so
        // Γ_M φᵃ ψ = Γ_{MW} φ^{a⊕1}.
        m = m.mul(&quarter_turn());
        inv_flag = !inv_flag;
        psi_flag = false;
    }
    // Sign anchor: Γ_M = Γ_{-M}, so flip to make the first entry clearly
    // above rounding noise positive.
    let floor = 1e-12 * m.max_abs();
    'scan: for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            if v.abs() > floor {
                if v < 0.0 {
                    m = m.neg();
                }
                break 'scan;
            }
        }
    }
    CanonicalIsometry {
        m,
        inv_flag,
        psi_flag,
    }
}

/// Flag-arithmetic composition without final normalization.
fn compose_parts(
    f_m: &GeneralMatrix,
    f_inv: bool,
    f_psi: bool,
    g_m: &GeneralMatrix,
    g_inv: bool,
    g_psi: bool,
) -> Result<(GeneralMatrix, bool, bool)> {
    let n = f_m.order();
    // Move Γ_{g_m} left through ψ^{f_psi} then φ^{f_inv}.
    let mut passed = if f_psi {
        let det = abs_det_general(g_m)?;
        g_m.scale(det.powf(-2.0 / n as f64))
    } else {
        g_m.clone()
    };
    if f_inv {
        passed = inverse_general(&passed)?.transpose();
    }
    Ok((f_m.mul(&passed), f_inv ^ g_inv, f_psi ^ g_psi))
}

/// Composition `f ∘ g` in normal form; `apply(compose(f,g), A)` agrees with
/// `apply(f, apply(g, A))` pointwise.
pub fn compose(f: &CanonicalIsometry, g: &CanonicalIsometry) -> Result<CanonicalIsometry> {
    let (m, a, b) = compose_parts(&f.m, f.inv_flag, f.psi_flag, &g.m, g.inv_flag, g.psi_flag)?;
    require_nonsingular(&m)?;
    Ok(normalize(m, a, b))
}

/// Rewrite a free word to its normal form, left to right. The matrix order
/// is read from the first congruence letter; for words of pure `Inv`/`Psi`
/// letters use [`canonicalize_with_order`].
pub fn canonicalize(word: &IsometryWord) -> Result<CanonicalIsometry> {
    let n = word
        .letters
        .iter()
        .find_map(|l| match l {
            IsometryLetter::Congr(c) => Some(c.order()),
            _ => None,
        })
        .ok_or(Error::InvalidArgument(
            "word has no congruence letter to fix the order; use canonicalize_with_order",
        ))?;
    canonicalize_with_order(word, n)
}

/// Rewrite with the matrix order given explicitly.
pub fn canonicalize_with_order(word: &IsometryWord, n: usize) -> Result<CanonicalIsometry> {
    let mut m = GeneralMatrix::identity(n)?;
    let mut inv_flag = false;
    let mut psi_flag = false;
    for letter in &word.letters {
        let (lm, la, lb) = match letter {
            IsometryLetter::Congr(c) => {
                if c.order() != n {
                    return Err(Error::ShapeMismatch {
                        expected: n,
                        found: c.order(),
                    });
                }
                require_nonsingular(c)?;
                (c.clone(), false, false)
            }
            IsometryLetter::Inv => (GeneralMatrix::identity(n)?, true, false),
            IsometryLetter::Psi => (GeneralMatrix::identity(n)?, false, true),
        };
        let (nm, na, nb) = compose_parts(&m, inv_flag, psi_flag, &lm, la, lb)?;
        m = nm;
        inv_flag = na;
        psi_flag = nb;
    }
    require_nonsingular(&m)?;
    Ok(normalize(m, inv_flag, psi_flag))
}

/// The geodesic symmetry `φ_Q = Γ_Q ∘ φ` fixing `Q`; it reverses every
/// geodesic through `Q`, and on `P_n` the fixed point is unique.
pub fn geodesic_symmetry_at(q: &ManifoldPoint) -> CanonicalIsometry {
    normalize(q.matrix().to_general(), true, false)
}

/// Recover the normal form of a black-box isometry of `(P_n, g)`.
///
/// The scale action on the product splitting yields a line map `x ↦ σx + β`
/// with `σ = ±1`; restricting to the unit-determinant slice and conjugating
/// away the image of the identity leaves an isometry fixing `I` whose
/// tangent action at `I` is `±Γ_U` with `U` orthogonal. Central differences
/// along trace-free probes decide the sign and recover `U` column by column.
/// The assembled candidate is always verified on a random pointwise probe
/// before being returned; a map failing any stage is rejected as
/// [`Error::NotAnIsometry`].
pub fn identify<F>(oracle: F, n: usize, seed: u64) -> Result<CanonicalIsometry>
where
    F: Fn(&SymMatrix) -> SymMatrix,
{
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    let not_isometry = |_| Error::NotAnIsometry(f64::INFINITY);

    let eval = |m: &SymMatrix| -> Result<ManifoldPoint> {
        ManifoldPoint::spd(oracle(m)).map_err(not_isometry)
    };
    let x_of = |p: &ManifoldPoint| -> Result<f64> { Ok(product_split(p).map_err(not_isometry)?.1) };
    let sqrt_n = (n as f64).sqrt();

    // Scale action read at two points of the ray through I.
    let identity = SymMatrix::identity(n)?;
    let x1 = x_of(&eval(&identity)?)?;
    let shifted = identity.scale((2.0 / sqrt_n).exp()); // x-coordinate exactly 2
    let x2 = x_of(&eval(&shifted)?)?;
    let slope = (x2 - x1) / 2.0;
    let sigma_negative = if (slope - 1.0).abs() < 1e-3 {
        false
    } else if (slope + 1.0).abs() < 1e-3 {
        true
    } else {
        return Err(Error::NotAnIsometry((slope.abs() - 1.0).abs()));
    };
    let beta = x1;

    // G: the slice part of the oracle on SLP_n; H = Γ_{P⁻¹} ∘ G fixes I.
    let g_of = |q: &SymMatrix| -> Result<SymMatrix> {
        Ok(product_split(&eval(q)?)
            .map_err(not_isometry)?
            .0
            .matrix()
            .clone())
    };
    let p_factor = sqrt_spd(&g_of(&identity)?).map_err(not_isometry)?;
    let p_inv = inverse_general(&p_factor.to_general()).map_err(not_isometry)?;
    let h_of = |q: &SymMatrix| -> Result<SymMatrix> {
        Ok(p_inv
            .mul(&g_of(q)?.to_general())
            .mul(&p_inv.transpose())
            .symmetrized())
    };

    // Tangent action of H at I by central differences along trace-free
    // directions (the probes exp(±hX) stay on the slice).
    let h_step = 1e-5;
    let tangent_map = |x: &SymMatrix| -> Result<SymMatrix> {
        let plus = h_of(&expm(&x.to_general().scale(h_step)).symmetrized())?;
        let minus = h_of(&expm(&x.to_general().scale(-h_step)).symmetrized())?;
        Ok(plus.sub(&minus).scale(0.5 / h_step))
    };

    // Inversion flag of H from the eigenvalue multiset of an asymmetric
    // trace-free spectrum; undecidable for n = 2, where every isometry of
    // the slice is a congruence anyway.
    let h_inverts = if n == 2 {
        false
    } else {
        let mut probe = vec![-1.0; n];
        probe[0] = (n - 1) as f64;
        let norm = ((n - 1) * n) as f64;
        let x0 = SymMatrix::diag(&probe)?.scale(1.0 / norm.sqrt());
        let image = tangent_map(&x0)?;
        let got = eig_sym(&image).map_err(not_isometry)?.values;
        let mut want: Vec<f64> = (0..n).map(|i| x0[(i, i)]).collect();
        want.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let mut want_neg: Vec<f64> = want.iter().map(|v| -v).collect();
        want_neg.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let dev_plus: f64 = got
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let dev_minus: f64 = got
            .iter()
            .zip(&want_neg)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if dev_plus.min(dev_minus) > 1e-3 {
            return Err(Error::NotAnIsometry(dev_plus.min(dev_minus)));
        }
        dev_minus < dev_plus
    };
    let oriented = |x: &SymMatrix| -> Result<SymMatrix> {
        let mapped = tangent_map(x)?;
        Ok(if h_inverts { mapped.neg() } else { mapped })
    };

    // U up to column signs from a diagonal probe with distinct entries: the
    // oriented image is U D₀ Uᵀ, so its ascending eigenvectors are ±columns.
    let d_entries: Vec<f64> = (0..n).map(|i| i as f64 - (n as f64 - 1.0) / 2.0).collect();
    let d0 = SymMatrix::diag(&d_entries)?;
    let frame = eig_sym(&oriented(&d0)?).map_err(not_isometry)?;
    let mut columns: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|i| frame.vectors[(i, k)]).collect())
        .collect();

    // Relative signs from the mixed probes S^(1,j): v₁ᵀ (U S Uᵀ) v_j = ±1/√2.
    for j in 1..n {
        let mut s = SymMatrix::zeros(n)?;
        s.set_sym(0, j, 1.0 / 2f64.sqrt());
        let image = oriented(&s)?;
        let mut val = 0.0;
        for r in 0..n {
            for c in 0..n {
                val += columns[0][r] * image[(r, c)] * columns[j][c];
            }
        }
        if val.abs() < 0.1 {
            return Err(Error::NotAnIsometry(val.abs()));
        }
        if val < 0.0 {
            for entry in columns[j].iter_mut() {
                *entry = -*entry;
            }
        }
    }
    let u = GeneralMatrix::from_fn(n, |i, j| columns[j][i])?;

    // Assemble: a = a_H, b = a_H ⊕ [σ = -1], M = e^{β/(2√n)} P U.
    let a_flag = h_inverts;
    let b_flag = h_inverts ^ sigma_negative;
    let m = p_factor
        .to_general()
        .mul(&u)
        .scale((beta / (2.0 * sqrt_n)).exp());
    let candidate = CanonicalIsometry::new(m, a_flag, b_flag).map_err(not_isometry)?;

    // Final gate: the candidate must match the oracle pointwise.
    let mut rng = Rng::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let probe = sample::spd(&mut rng, n, 0.8);
        let through_oracle = eval(&probe)?;
        let through_candidate =
            candidate.apply(&ManifoldPoint::spd(probe).expect("sample is SPD"))?;
        let denom = through_oracle.matrix().frobenius_norm().max(1.0);
        let dev = through_candidate
            .matrix()
            .sub(through_oracle.matrix())
            .frobenius_norm()
            / denom;
        worst = worst.max(dev);
    }
    if worst > TOL_ID {
        return Err(Error::NotAnIsometry(worst));
    }
    Ok(candidate)
}
