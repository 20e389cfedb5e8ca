//! Numerical verification of Callebaut-type inequalities for positive
//! definite matrices.
//!
//! Each operator statement in [`inequalities`] is encoded as a list of
//! Loewner links `LHS ≤ RHS` and scored by the smallest eigenvalue of
//! `RHS − LHS`. Diagonal instances can also be evaluated through the scalar
//! path in [`oracle`], which is independent of the matrix code.
//!
//! ```
//! use callebaut::inequalities::{evaluate_inequality, IneqId, Params, Variant};
//! use callebaut::matcore::DEFAULT_TOL;
//! use callebaut::sampler::{derive_rng, sample_family, SpectralBand};
//!
//! let band = SpectralBand::new(0.5, 1.0, 2.0, 8.0)?;
//! let inst = sample_family(2, 3, &band, &mut derive_rng(0, 0), true)?;
//! let params = Params::Pair { s: 0.75, t: 0.875 };
//! let report = evaluate_inequality(IneqId::HadMaman, &inst, &params, Variant::Repaired, DEFAULT_TOL)?;
//! assert!(report.satisfied());
//! # Ok::<(), callebaut::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod band;
pub mod error;
pub mod inequalities;
pub mod matcore;
pub mod oracle;
pub mod report;
pub mod sampler;
pub mod scalarcore;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrix-core.md")]
    mod matrix_core {}
    #[doc = include_str!("../../../book/src/scalar.md")]
    mod scalar {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
