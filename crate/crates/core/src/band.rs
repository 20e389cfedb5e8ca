use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spectral band `0 < m′ ≤ B ≤ m < M ≤ A ≤ M′` separating the `B`-family
/// from the `A`-family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct SpectralBand {
    b_min: f64,
    b_max: f64,
    a_min: f64,
    a_max: f64,
}

impl SpectralBand {
    /// `(m′, m, M, M′)`.
    pub fn new(b_min: f64, b_max: f64, a_min: f64, a_max: f64) -> Result<Self> {
        let all_finite = [b_min, b_max, a_min, a_max].iter().all(|x| x.is_finite());
        if !all_finite || !(0.0 < b_min && b_min <= b_max && b_max < a_min && a_min <= a_max) {
            return Err(Error::Hypothesis(format!(
                "band ({b_min}, {b_max}, {a_min}, {a_max}) violates 0 < m' <= m < M <= M'"
            )));
        }
        Ok(SpectralBand { b_min, b_max, a_min, a_max })
    }

    /// `m′`
    pub fn b_min(&self) -> f64 {
        self.b_min
    }
    /// `m`
    pub fn b_max(&self) -> f64 {
        self.b_max
    }
    /// `M`
    pub fn a_min(&self) -> f64 {
        self.a_min
    }
    /// `M′`
    pub fn a_max(&self) -> f64 {
        self.a_max
    }

    /// `h = M / m > 1`.
    pub fn h(&self) -> f64 {
        self.a_min / self.b_max
    }

    /// `h′ = M′ / m′ ≥ h`.
    pub fn h_prime(&self) -> f64 {
        self.a_max / self.b_min
    }

    /// `ρ = m M′ / (m′ M) ≥ 1`: the spectrum of `A_j^{-1/2} B_j A_j^{-1/2} ⊗
    /// (A_i^{-1/2} B_i A_i^{-1/2})^{-1}` lies in `[1/ρ, ρ]`.
    pub fn cross_ratio(&self) -> f64 {
        (self.b_max * self.a_max) / (self.b_min * self.a_min)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(c * self.b_min, c * self.b_max, c * self.a_min, c * self.a_max)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.b_min, self.b_max, self.a_min, self.a_max]
    }
}

impl TryFrom<[f64; 4]> for SpectralBand {
    type Error = Error;
    fn try_from(v: [f64; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<SpectralBand> for [f64; 4] {
    fn from(b: SpectralBand) -> Self {
        b.as_array()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_ratios() {
        let b = SpectralBand::new(0.5, 1.0, 2.0, 8.0).unwrap();
        assert_eq!(b.h(), 2.0);
        assert_eq!(b.h_prime(), 16.0);
        assert_eq!(b.cross_ratio(), 8.0);
    }

    #[test]
    fn degenerate_band_is_admitted() {
        let b = SpectralBand::new(1.0, 1.0, 4.0, 4.0).unwrap();
        assert_eq!(b.h(), 4.0);
        assert_eq!(b.cross_ratio(), 1.0);
    }

    #[test]
    fn overlapping_band_is_rejected() {
        assert!(SpectralBand::new(1.0, 2.0, 2.0, 3.0).is_err());
        assert!(SpectralBand::new(0.0, 1.0, 2.0, 3.0).is_err());
        assert!(SpectralBand::new(1.0, 0.5, 2.0, 3.0).is_err());
        assert!(SpectralBand::new(1.0, 1.5, 3.0, 2.0).is_err());
    }
}
