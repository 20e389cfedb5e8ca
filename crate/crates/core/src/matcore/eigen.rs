use super::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`sym_eigen`].
pub const MAX_EIGEN_DIM: usize = 64;

/// Eigen-decomposition `A = Q Λ Qᵀ` of a symmetric matrix.
///
/// Eigenvalues are ascending and column `k` of `eigenvectors` belongs to
/// `eigenvalues[k]`. Each column's first nonzero component is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `Q f(Λ) Qᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.eigenvectors.conjugate_diagonal(&values)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.map(|x| x)
    }
}

/// Knobs for the cyclic Jacobi iteration.
#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    /// Upper bound on full sweeps; `None` uses `max(30, 30·d²)`.
    pub max_sweeps: Option<usize>,
    /// Stop once `‖offdiag‖_F ≤ rel_tol · ‖A‖_F`.
    pub rel_tol: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions { max_sweeps: None, rel_tol: 1e-14 }
    }
}

/// Eigen-decomposition by cyclic Jacobi rotations with a threshold strategy.
pub fn sym_eigen(a: &SymMatrix) -> Result<EigenDecomposition> {
    sym_eigen_with(a, JacobiOptions::default())
}

pub fn sym_eigen_with(a: &SymMatrix, opts: JacobiOptions) -> Result<EigenDecomposition> {
    let n = a.dim();
    if n > MAX_EIGEN_DIM {
        return Err(Error::Size { dim: n, cap: MAX_EIGEN_DIM });
    }
    let max_sweeps = opts.max_sweeps.unwrap_or_else(|| (30 * n * n).max(30));
    let mut m = a.to_matrix();
    let mut v = Matrix::identity(n);

    let total = a.frobenius_norm();
    let target = opts.rel_tol * total;
    let mut off = off_diagonal_norm(&m);
    let mut sweeps = 0;

    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_diagonal: off });
        }
        sweeps += 1;
        // Early sweeps only rotate away the large entries.
        let threshold = if sweeps < 4 { 0.2 * off_diagonal_abs_sum(&m) / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let g = 100.0 * apq.abs();
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    m.set(p, q, 0.0);
                    m.set(q, p, 0.0);
                    continue;
                }
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                rotate(&mut m, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).total_cmp(&m.get(j, j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m.get(k, k)).collect();
    let mut vectors = Matrix::identity(n);
    for (col, &k) in order.iter().enumerate() {
        let sign = match (0..n).map(|i| v.get(i, k)).find(|x| *x != 0.0) {
            Some(x) if x < 0.0 => -1.0,
            _ => 1.0,
        };
        for i in 0..n {
            vectors.set(i, col, sign * v.get(i, k));
        }
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors: vectors })
}

/// Annihilates `m[p][q]` with one plane rotation and accumulates it into `v`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = m.dim();
    let apq = m.get(p, q);
    let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..n {
        let mkp = m.get(k, p);
        let mkq = m.get(k, q);
        m.set(k, p, c * mkp - s * mkq);
        m.set(k, q, s * mkp + c * mkq);
    }
    for k in 0..n {
        let mpk = m.get(p, k);
        let mqk = m.get(q, k);
        m.set(p, k, c * mpk - s * mqk);
        m.set(q, k, s * mpk + c * mqk);
    }
    m.set(p, q, 0.0);
    m.set(q, p, 0.0);

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.get(i, j) * m.get(i, j);
            }
        }
    }
    acc.sqrt()
}

fn off_diagonal_abs_sum(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.get(i, j).abs();
            }
        }
    }
    acc
}
