use super::SymMatrix;
use crate::error::{Error, Result};

/// Default cap on the dimension of a Kronecker product.
pub const KRON_DIM_CAP: usize = 4096;

/// Kronecker product `A ⊗ B`; block `(i, j)` is `a_ij · B`.
pub fn kron(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    kron_with_cap(a, b, KRON_DIM_CAP)
}

pub fn kron_with_cap(a: &SymMatrix, b: &SymMatrix, cap: usize) -> Result<SymMatrix> {
    let (p, q) = (a.dim(), b.dim());
    let dim = p * q;
    if dim > cap {
        return Err(Error::Size { dim, cap });
    }
    Ok(SymMatrix::from_fn(dim, |r, c| a.get(r / q, c / q) * b.get(r % q, c % q)))
}

/// Entrywise product `A ∘ B`.
pub fn hadamard(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!("hadamard of {}x{} and {}x{}", a.dim(), a.dim(), b.dim(), b.dim())));
    }
    Ok(SymMatrix::from_fn(a.dim(), |i, j| a.get(i, j) * b.get(i, j)))
}

/// Compression `U* T U` with `U e_j = e_j ⊗ e_j`, so that
/// `compress(A ⊗ B, d) = A ∘ B`.
pub fn compress(t: &SymMatrix, d: usize) -> Result<SymMatrix> {
    if d == 0 || t.dim() != d * d {
        return Err(Error::Shape(format!("cannot compress a {}x{} matrix to dimension {d}", t.dim(), t.dim())));
    }
    Ok(SymMatrix::from_fn(d, |i, j| t.get(i * d + i, j * d + j)))
}
