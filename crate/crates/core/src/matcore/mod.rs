//! Dense real symmetric matrix algebra.
//!
//! [`SymMatrix`] is the carrier for every operator that appears in the
//! inequalities: the families `A_j`, `B_j`, tensor and Hadamard products and
//! weighted geometric means. All operations are pure functions of their
//! inputs.

mod eigen;
mod functions;
mod loewner;
mod products;

pub use eigen::{sym_eigen, sym_eigen_with, EigenDecomposition, JacobiOptions, MAX_EIGEN_DIM};
pub use functions::{geo_mean, spectral_pow, EIG_FLOOR};
pub use loewner::{loewner_gap, LoewnerGap, DEFAULT_TOL};
pub use products::{compress, hadamard, kron, kron_with_cap, KRON_DIM_CAP};

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense real symmetric matrix stored row-major.
///
/// Symmetry is exact: every constructor symmetrises its input as
/// `(X + Xᵀ) / 2`, which leaves already-symmetric entries bit-identical.
/// Serialises as a list of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl TryFrom<Vec<Vec<f64>>> for SymMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        SymMatrix::from_rows(&rows)
    }
}

impl From<SymMatrix> for Vec<Vec<f64>> {
    fn from(m: SymMatrix) -> Self {
        m.data.chunks(m.dim).map(<[f64]>::to_vec).collect()
    }
}

impl SymMatrix {
    /// Builds a matrix from `dim * dim` row-major entries, symmetrising them.
    pub fn from_row_major(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let mut m = SymMatrix { dim, data: entries };
        m.symmetrize();
        Ok(m)
    }

    /// Builds a matrix from its rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape("rows must form a square matrix".into()));
        }
        Self::from_row_major(dim, rows.concat())
    }

    pub(crate) fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        let mut m = SymMatrix { dim, data };
        m.symmetrize();
        m
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, value: f64) -> Self {
        Self::diagonal(&vec![value; dim])
    }

    /// Diagonal matrix with the given diagonal.
    pub fn diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        assert!(dim >= 1, "dimension must be at least 1");
        let mut data = vec![0.0; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            data[i * dim + i] = d;
        }
        SymMatrix { dim, data }
    }

    /// The 1x1 matrix `[value]`.
    pub fn scalar(value: f64) -> Self {
        SymMatrix { dim: 1, data: vec![value] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_norm(&self) -> Result<f64> {
        let eig = sym_eigen(self)?;
        Ok(eig.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs())))
    }

    pub fn scale(&self, factor: f64) -> Self {
        SymMatrix { dim: self.dim, data: self.data.iter().map(|x| x * factor).collect() }
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (self.data[i * n + j] + self.data[j * n + i]) / 2.0;
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in elementwise operation");
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub(crate) fn to_matrix(&self) -> Matrix {
        Matrix { n: self.dim, data: self.data.clone() }
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&SymMatrix> for f64 {
    type Output = SymMatrix;
    fn mul(self, rhs: &SymMatrix) -> SymMatrix {
        rhs.scale(self)
    }
}

/// General dense square matrix, used for eigenvector bases and orthogonal
/// factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * n, data.len())));
        }
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Matrix { n, data }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch in matmul");
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    /// `Q diag(values) Qᵀ`, symmetrised.
    pub fn conjugate_diagonal(&self, values: &[f64]) -> SymMatrix {
        let n = self.n;
        assert_eq!(values.len(), n);
        SymMatrix::from_fn(n, |i, j| {
            let mut acc = 0.0;
            for (k, &v) in values.iter().enumerate() {
                acc += self.data[i * n + k] * v * self.data[j * n + k];
            }
            acc
        })
    }

    /// Determinant by partial-pivot LU on a copy.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))
                .unwrap_or(col);
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let factor = a[r * n + col] / p;
                for j in col..n {
                    a[r * n + j] -= factor * a[col * n + j];
                }
            }
        }
        det
    }

    /// `max |QᵀQ − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let qtq = self.transpose().matmul(self);
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((qtq.get(i, j) - target).abs());
            }
        }
        worst
    }
}

/// `S X S` for symmetric `S` and `X`, symmetrised.
pub(crate) fn congruence(s: &SymMatrix, x: &SymMatrix) -> SymMatrix {
    let sm = s.to_matrix();
    let prod = sm.matmul(&x.to_matrix()).matmul(&sm);
    SymMatrix::from_fn(s.dim(), |i, j| prod.get(i, j))
}
