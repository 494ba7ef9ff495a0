//! Dense real matrix carriers.
//!
//! `SymMatrix` guarantees `a[i][j] == a[j][i]` bitwise; `GeneralMatrix` is an
//! unconstrained square array. Both are row-major, order `n ≥ 2`, and small
//! enough (n up to a few dozen) that naive O(n³) arithmetic is the right tool.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Square real matrix with no structural constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMatrix {
    n: usize,
    data: Vec<f64>,
}

/// Real symmetric matrix; symmetry is enforced on construction and preserved
/// by every method that returns `SymMatrix`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    Ok(())
}

impl GeneralMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(GeneralMatrix {
            n,
            data: vec![0.0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(GeneralMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_order(n)?;
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = GeneralMatrix {
            n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        let n = self.n;
        let mut out = GeneralMatrix {
            n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let row_k = &other.data[k * n..(k + 1) * n];
                let row_out = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    row_out[j] += aik * row_k[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        GeneralMatrix { n: self.n, data }
    }

    pub fn sub(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        GeneralMatrix { n: self.n, data }
    }

    pub fn scale(&self, t: f64) -> GeneralMatrix {
        GeneralMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * t).collect(),
        }
    }

    pub fn neg(&self) -> GeneralMatrix {
        self.scale(-1.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| self.data[i * n + j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.n;
        let mut m = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                m = m.max((self.data[i * n + j] - self.data[j * n + i]).abs());
            }
        }
        m
    }

    /// Average with the transpose; the result is exactly symmetric.
    pub fn symmetrized(&self) -> SymMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { n, data }
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &GeneralMatrix) -> GeneralMatrix {
        self.mul(other).sub(&other.mul(self))
    }
}

impl SymMatrix {
    /// Build from rows, requiring exact (bitwise) symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let g = GeneralMatrix::from_rows(rows)?;
        Self::from_general(&g)
    }

    /// Build from a general matrix, requiring exact symmetry. Use
    /// [`GeneralMatrix::symmetrized`] to average away rounding first.
    pub fn from_general(g: &GeneralMatrix) -> Result<Self> {
        let asym = g.max_asymmetry();
        if asym != 0.0 {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(SymMatrix {
            n: g.n,
            data: g.data.clone(),
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(SymMatrix {
            n,
            data: vec![0.0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        let mut m = Self::zeros(n)?;
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        Ok(m)
    }

    /// The canonical signature representative `J_p = diag(I_p, -I_{n-p})`.
    pub fn canonical_j(n: usize, p: usize) -> Result<Self> {
        if p > n {
            return Err(Error::SignatureOutOfRange { p, n });
        }
        Self::diag(
            &(0..n)
                .map(|i| if i < p { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        )
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix {
            n: self.n,
            data: self.data.clone(),
        }
    }

    /// Set the `(i, j)` and `(j, i)` entries together.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        SymMatrix { n: self.n, data }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        SymMatrix { n: self.n, data }
    }

    pub fn scale(&self, t: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * t).collect(),
        }
    }

    pub fn neg(&self) -> SymMatrix {
        self.scale(-1.0)
    }

    /// Product of two symmetric matrices is general.
    pub fn mul(&self, other: &SymMatrix) -> GeneralMatrix {
        self.to_general().mul(&other.to_general())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

impl Index<(usize, usize)> for GeneralMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for GeneralMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Display for GeneralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_general().fmt(f)
    }
}

/// Signature `(p, q)` of a non-singular symmetric matrix: counts of positive
/// and negative eigenvalues, `p + q = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn order(&self) -> usize {
        self.positive + self.negative
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_order_one() {
        assert!(matches!(SymMatrix::zeros(1), Err(Error::OrderTooSmall(1))));
        assert!(matches!(
            GeneralMatrix::identity(0),
            Err(Error::OrderTooSmall(0))
        ));
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        assert!(matches!(
            SymMatrix::from_rows(&rows),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn symmetrized_is_exact() {
        let g = GeneralMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-13, 4.0]]).unwrap();
        let s = g.symmetrized();
        assert_eq!(s[(0, 1)].to_bits(), s[(1, 0)].to_bits());
    }

    #[test]
    fn mul_against_hand_product() {
        let a = GeneralMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = GeneralMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let c = a.mul(&b);
        assert_eq!(c.rows(), vec![vec![2.0, 1.0], vec![4.0, 3.0]]);
    }

    #[test]
    fn canonical_j_blocks() {
        let j = SymMatrix::canonical_j(4, 2).unwrap();
        assert_eq!(j.rows()[0], vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(j.rows()[3], vec![0.0, 0.0, 0.0, -1.0]);
        assert!(SymMatrix::canonical_j(3, 4).is_err());
    }

    #[test]
    fn one_norm_is_max_column_sum() {
        let a = GeneralMatrix::from_rows(&[vec![1.0, -3.0], vec![2.0, 0.5]]).unwrap();
        assert_eq!(a.one_norm(), 3.5);
    }
}
