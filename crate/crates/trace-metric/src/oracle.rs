//! Independent differential geometry from the raw metric in coordinates.
//!
//! A single global chart identifies `Sym_n` with `R^{n(n+1)/2}` through the
//! upper-triangle entries. Everything here is derived from pointwise
//! evaluations of `g` alone: the Gram matrix over the coordinate basis
//! fields, Christoffel symbols by central differences, geodesics by RK4 on
//! `ẍᵏ = -Γᵏᵢⱼ ẋⁱ ẋʲ`, and the (0,4) curvature tensor by differencing the
//! symbols. None of it calls the closed-form geodesic or curvature code;
//! shared machinery is limited to dense matrix arithmetic, which is the
//! point: this module is the cross-check for every closed form in the crate.

use crate::error::{Error, Result};
use crate::symcore::{eig_sym, SymMatrix};
use crate::tol::TOL_PD;

/// The global upper-triangle chart on `Sym_n`.
#[derive(Debug, Clone, Copy)]
pub struct Chart {
    n: usize,
}

/// Second-order integration state: chart position and velocity at time `t`.
#[derive(Debug, Clone)]
pub struct OdeState {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub t: f64,
}

impl Chart {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        Ok(Chart { n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Chart dimension `n(n+1)/2`.
    pub fn dim(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Coordinate slot of the entry pair `(i, j)` with `i ≤ j`.
    pub fn slot(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.n, "chart index out of range");
        // Row-major over the upper triangle.
        i * self.n - i * (i + 1) / 2 + j
    }

    /// Coordinates of a symmetric matrix; exact copy of the upper triangle.
    pub fn encode(&self, m: &SymMatrix) -> Vec<f64> {
        assert_eq!(m.order(), self.n, "matrix order mismatch");
        let mut x = Vec::with_capacity(self.dim());
        for i in 0..self.n {
            for j in i..self.n {
                x.push(m[(i, j)]);
            }
        }
        x
    }

    /// Matrix of a coordinate vector; exact inverse of [`Chart::encode`].
    pub fn decode(&self, x: &[f64]) -> Result<SymMatrix> {
        if x.len() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut m = SymMatrix::zeros(self.n)?;
        let mut k = 0;
        for i in 0..self.n {
            for j in i..self.n {
                m.set_sym(i, j, x[k]);
                k += 1;
            }
        }
        Ok(m)
    }

    /// The coordinate basis field for a slot: `E^(i,i)` on the diagonal,
    /// `E^(i,j) + E^(j,i)` off it (unnormalized, matching ∂/∂x_ij).
    pub fn basis_field(&self, slot: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n).expect("chart order ≥ 2");
        let mut k = 0;
        for i in 0..self.n {
            for j in i..self.n {
                if k == slot {
                    m.set_sym(i, j, 1.0);
                    return m;
                }
                k += 1;
            }
        }
        panic!("chart slot out of range");
    }
}

/// Gram matrix of the trace metric over the chart's coordinate basis at the
/// decoded point; symmetric and invertible wherever the point is
/// non-singular.
pub fn metric_gram_at(chart: &Chart, x: &[f64]) -> Result<SymMatrix> {
    let a = chart.decode(x)?;
    let e = eig_sym(&a)?;
    let max = e.max_abs_value();
    if max == 0.0 || e.values.iter().any(|l| l.abs() <= TOL_PD * max) {
        return Err(Error::NearSingular);
    }
    let inv_values: Vec<f64> = e.values.iter().map(|l| 1.0 / l).collect();
    let a_inv = e.assemble(&inv_values);

    let dim = chart.dim();
    // Precompute A⁻¹·B_k once per slot; each Gram entry is then one trace.
    let factors: Vec<_> = (0..dim).map(|k| a_inv.mul(&chart.basis_field(k))).collect();
    let mut gram = SymMatrix::zeros(dim)?;
    for k in 0..dim {
        for l in k..dim {
            gram.set_sym(k, l, factors[k].mul(&factors[l]).trace());
        }
    }
    Ok(gram)
}

fn gram_inverse(gram: &SymMatrix) -> Result<SymMatrix> {
    let e = eig_sym(gram)?;
    let max = e.max_abs_value();
    if max == 0.0 || e.values.iter().any(|l| l.abs() <= TOL_PD * max) {
        return Err(Error::NearSingular);
    }
    let inv: Vec<f64> = e.values.iter().map(|l| 1.0 / l).collect();
    Ok(e.assemble(&inv))
}

/// Christoffel symbols `Γᵏᵢⱼ = ½ gᵏˡ (∂ᵢ g_jl + ∂ⱼ g_il - ∂_l g_ij)` by
/// central differences of the Gram matrix with step `h`. Flat layout
/// `[(k·dim + i)·dim + j]`; symmetric in the two lower indices.
pub fn christoffel_fd(chart: &Chart, x: &[f64], h: f64) -> Result<Vec<f64>> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(
            "finite-difference step must be positive",
        ));
    }
    let dim = chart.dim();
    let g0 = metric_gram_at(chart, x)?;
    let g_inv = gram_inverse(&g0)?;

    // dg[i] = ∂_i G as a dim×dim block.
    let mut dg = Vec::with_capacity(dim);
    let mut shifted = x.to_vec();
    for i in 0..dim {
        shifted[i] = x[i] + h;
        let plus = metric_gram_at(chart, &shifted)?;
        shifted[i] = x[i] - h;
        let minus = metric_gram_at(chart, &shifted)?;
        shifted[i] = x[i];
        dg.push(plus.sub(&minus).scale(0.5 / h));
    }

    let mut gamma = vec![0.0; dim * dim * dim];
    for k in 0..dim {
        for i in 0..dim {
            for j in i..dim {
                let mut sum = 0.0;
                for l in 0..dim {
                    sum += g_inv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                let value = 0.5 * sum;
                gamma[(k * dim + i) * dim + j] = value;
                gamma[(k * dim + j) * dim + i] = value;
            }
        }
    }
    Ok(gamma)
}

fn acceleration(chart: &Chart, position: &[f64], velocity: &[f64], h: f64) -> Result<Vec<f64>> {
    let dim = chart.dim();
    let gamma = christoffel_fd(chart, position, h)?;
    let mut acc = vec![0.0; dim];
    for k in 0..dim {
        let mut sum = 0.0;
        for i in 0..dim {
            let vi = velocity[i];
            if vi == 0.0 {
                continue;
            }
            for j in 0..dim {
                sum += gamma[(k * dim + i) * dim + j] * vi * velocity[j];
            }
        }
        acc[k] = -sum;
    }
    Ok(acc)
}

/// Classical RK4 on the geodesic system `ẋ = v`, `v̇ᵏ = -Γᵏᵢⱼ vⁱ vʲ`, with
/// the symbols re-differenced at every stage. Fails if the trajectory leaves
/// the non-singular region.
pub fn integrate_geodesic(
    chart: &Chart,
    start: &OdeState,
    t_end: f64,
    steps: usize,
    h: f64,
) -> Result<OdeState> {
    if steps < 1 {
        return Err(Error::InvalidArgument(
            "integration needs at least one step",
        ));
    }
    let dim = chart.dim();
    if start.position.len() != dim || start.velocity.len() != dim {
        return Err(Error::ShapeMismatch {
            expected: dim,
            found: start.position.len(),
        });
    }
    let dt = (t_end - start.t) / steps as f64;
    let mut pos = start.position.clone();
    let mut vel = start.velocity.clone();
    let mut t = start.t;

    let axpy = |y: &[f64], a: f64, x: &[f64]| -> Vec<f64> {
        y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
    };

    for _ in 0..steps {
        let fail_at = |e: Error| match e {
            Error::NearSingular => Error::IntegrationFailure(t),
            other => other,
        };
        let a1 = acceleration(chart, &pos, &vel, h).map_err(fail_at)?;
        let p2 = axpy(&pos, dt / 2.0, &vel);
        let v2 = axpy(&vel, dt / 2.0, &a1);
        let a2 = acceleration(chart, &p2, &v2, h).map_err(fail_at)?;
        let p3 = axpy(&pos, dt / 2.0, &v2);
        let v3 = axpy(&vel, dt / 2.0, &a2);
        let a3 = acceleration(chart, &p3, &v3, h).map_err(fail_at)?;
        let p4 = axpy(&pos, dt, &v3);
        let v4 = axpy(&vel, dt, &a3);
        let a4 = acceleration(chart, &p4, &v4, h).map_err(fail_at)?;

        for k in 0..dim {
            pos[k] += dt / 6.0 * (vel[k] + 2.0 * v2[k] + 2.0 * v3[k] + v4[k]);
            vel[k] += dt / 6.0 * (a1[k] + 2.0 * a2[k] + 2.0 * a3[k] + a4[k]);
        }
        t += dt;
    }
    Ok(OdeState {
        position: pos,
        velocity: vel,
        t: t_end,
    })
}

/// The (0,4) curvature tensor over chart indices, by central differences of
/// the Christoffel symbols plus the quadratic terms, lowered with the Gram
/// matrix. The output layout `[((i·dim + j)·dim + k)·dim + l]` matches the
/// closed-form convention `R(B_i, B_j, B_k, B_l)` of [`crate::curvature`],
/// so entries compare directly.
pub fn riemann_fd(chart: &Chart, x: &[f64], h: f64) -> Result<Vec<f64>> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(
            "finite-difference step must be positive",
        ));
    }
    let dim = chart.dim();
    let gram = metric_gram_at(chart, x)?;
    let gamma0 = christoffel_fd(chart, x, h)?;

    // dgamma[m] = ∂_m Γ, flat dim³ blocks.
    let mut dgamma = Vec::with_capacity(dim);
    let mut shifted = x.to_vec();
    for m in 0..dim {
        shifted[m] = x[m] + h;
        let plus = christoffel_fd(chart, &shifted, h)?;
        shifted[m] = x[m] - h;
        let minus = christoffel_fd(chart, &shifted, h)?;
        shifted[m] = x[m];
        let diff: Vec<f64> = plus
            .iter()
            .zip(&minus)
            .map(|(p, q)| (p - q) * 0.5 / h)
            .collect();
        dgamma.push(diff);
    }

    let gam = |k: usize, i: usize, j: usize| gamma0[(k * dim + i) * dim + j];

    // Upper tensor R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} - ∂_ν Γ^ρ_{μσ}
    //                        + Γ^ρ_{μλ} Γ^λ_{νσ} - Γ^ρ_{νλ} Γ^λ_{μσ}.
    let mut upper = vec![0.0; dim * dim * dim * dim];
    for rho in 0..dim {
        for sigma in 0..dim {
            for mu in 0..dim {
                for nu in 0..dim {
                    let mut val = dgamma[mu][(rho * dim + nu) * dim + sigma]
                        - dgamma[nu][(rho * dim + mu) * dim + sigma];
                    for lam in 0..dim {
                        val += gam(rho, mu, lam) * gam(lam, nu, sigma)
                            - gam(rho, nu, lam) * gam(lam, mu, sigma);
                    }
                    upper[((rho * dim + sigma) * dim + mu) * dim + nu] = val;
                }
            }
        }
    }

    // Lower with the Gram and reorder to the closed-form layout:
    // R(B_μ, B_ν, B_σ, B_ρ) = -g_{ρλ} R^λ_{σμν}.
    let mut out = vec![0.0; dim * dim * dim * dim];
    for mu in 0..dim {
        for nu in 0..dim {
            for sigma in 0..dim {
                for rho in 0..dim {
                    let mut lowered = 0.0;
                    for lam in 0..dim {
                        lowered +=
                            gram[(rho, lam)] * upper[((lam * dim + sigma) * dim + mu) * dim + nu];
                    }
                    out[((mu * dim + nu) * dim + sigma) * dim + rho] = -lowered;
                }
            }
        }
    }
    Ok(out)
}
