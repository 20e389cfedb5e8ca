use super::{congruence, sym_eigen, SymMatrix};
use crate::error::{Error, Result};

/// Smallest eigenvalue admitted for fractional powers and means. Inputs below
/// it are rejected, never regularised.
pub const EIG_FLOOR: f64 = 1e-12;

fn is_nonnegative_integer(p: f64) -> bool {
    p >= 0.0 && p.fract() == 0.0
}

fn scalar_pow(x: f64, p: f64) -> f64 {
    if p == 0.5 {
        x.sqrt()
    } else if p == -0.5 {
        1.0 / x.sqrt()
    } else if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        x.powi(p as i32)
    } else {
        x.powf(p)
    }
}

/// `A^p` through the eigen-decomposition.
///
/// Nonnegative integer exponents accept any symmetric input; every other
/// exponent requires `λ_min(A) ≥ EIG_FLOOR`.
pub fn spectral_pow(a: &SymMatrix, p: f64) -> Result<SymMatrix> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("exponent {p} is not finite")));
    }
    if p == 0.0 {
        return Ok(SymMatrix::identity(a.dim()));
    }
    if p == 1.0 {
        return Ok(a.clone());
    }
    let eig = sym_eigen(a)?;
    if !is_nonnegative_integer(p) && eig.min_eigenvalue() < EIG_FLOOR {
        return Err(Error::Domain(format!(
            "A^{p} needs a positive definite A, smallest eigenvalue is {:e}",
            eig.min_eigenvalue()
        )));
    }
    Ok(eig.map(|x| scalar_pow(x, p)))
}

/// Weighted geometric mean `A ♯_α B = A^{1/2} (A^{-1/2} B A^{-1/2})^α A^{1/2}`.
pub fn geo_mean(a: &SymMatrix, b: &SymMatrix, alpha: f64) -> Result<SymMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!("geo_mean of {}x{} and {}x{}", a.dim(), a.dim(), b.dim(), b.dim())));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("geo_mean weight {alpha} outside [0, 1]")));
    }
    let ea = sym_eigen(a)?;
    let eb = sym_eigen(b)?;
    for (name, e) in [("A", &ea), ("B", &eb)] {
        if e.min_eigenvalue() < EIG_FLOOR {
            return Err(Error::Domain(format!(
                "geo_mean needs positive definite {name}, smallest eigenvalue is {:e}",
                e.min_eigenvalue()
            )));
        }
    }
    if alpha == 0.0 {
        return Ok(a.clone());
    }
    if alpha == 1.0 {
        return Ok(b.clone());
    }
    let a_half = ea.map(f64::sqrt);
    let a_inv_half = ea.map(|x| 1.0 / x.sqrt());
    // C = A^{-1/2} B A^{-1/2} is congruent to B; clamp rounding noise only.
    let inner = sym_eigen(&congruence(&a_inv_half, b))?;
    let inner_pow = inner.map(|x| scalar_pow(x.max(0.0), alpha));
    Ok(congruence(&a_half, &inner_pow))
}
