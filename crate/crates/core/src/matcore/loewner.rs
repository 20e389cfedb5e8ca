use serde::{Deserialize, Serialize};

use super::{sym_eigen, SymMatrix};
use crate::error::{Error, Result};

/// Default relative tolerance for Loewner verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Signed Loewner gap of a claimed inequality `LHS ≤ RHS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerGap {
    /// Smallest eigenvalue of `RHS − LHS`.
    pub min_eig: f64,
    /// `min_eig / max(1, ‖RHS‖₂)`.
    pub rel_gap: f64,
    pub satisfied: bool,
}

/// Measures how far `LHS ≤ RHS` is from failing; `satisfied` iff
/// `rel_gap ≥ −tol`.
pub fn loewner_gap(lhs: &SymMatrix, rhs: &SymMatrix, tol: f64) -> Result<LoewnerGap> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::Shape(format!("loewner_gap of {}x{} and {}x{}", lhs.dim(), lhs.dim(), rhs.dim(), rhs.dim())));
    }
    let min_eig = sym_eigen(&(rhs - lhs))?.min_eigenvalue();
    let rel_gap = min_eig / rhs.spectral_norm()?.max(1.0);
    Ok(LoewnerGap { min_eig, rel_gap, satisfied: rel_gap >= -tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = loewner_gap(&SymMatrix::identity(2), &SymMatrix::scaled_identity(2, 2.0), DEFAULT_TOL).unwrap();
        assert_eq!(g.min_eig, 1.0);
        assert!(g.satisfied);

        let g = loewner_gap(&SymMatrix::diagonal(&[1.0, 3.0]), &SymMatrix::diagonal(&[2.0, 2.0]), DEFAULT_TOL).unwrap();
        assert_eq!(g.min_eig, -1.0);
        assert!(!g.satisfied);

        let x = SymMatrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 5.0]]).unwrap();
        let g = loewner_gap(&x, &x, DEFAULT_TOL).unwrap();
        assert_eq!(g.min_eig, 0.0);
        assert!(g.satisfied);
    }

    #[test]
    fn relative_gap_scales_by_rhs_norm() {
        let g = loewner_gap(&SymMatrix::scalar(12.0), &SymMatrix::scalar(10.0), DEFAULT_TOL).unwrap();
        assert_eq!(g.min_eig, -2.0);
        assert_eq!(g.rel_gap, -0.2);
    }

    #[test]
    fn shape_mismatch() {
        let r = loewner_gap(&SymMatrix::identity(2), &SymMatrix::identity(3), DEFAULT_TOL);
        assert!(matches!(r, Err(Error::Shape(_))));
    }
}
