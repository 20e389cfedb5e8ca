//! Deterministic generation of scalar tuples and positive definite families
//! satisfying the spectral-band hypothesis.
//!
//! Every sampled object is a pure function of `(master_seed, stream_id)` and
//! its shape parameters. The exact bit-level recipe is documented in the
//! book chapter on sampling.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use serde::{Deserialize, Serialize};

pub use crate::band::SpectralBand;
use crate::error::{Error, Result};
use crate::matcore::{sym_eigen, Matrix, SymMatrix, MAX_EIGEN_DIM};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Order-sensitive 64-bit hash of a word sequence, stable across platforms
/// and releases.
pub fn stream_hash(words: &[u64]) -> u64 {
    words.iter().fold(GOLDEN_GAMMA, |h, &w| mix64(h.rotate_left(23) ^ w.wrapping_add(GOLDEN_GAMMA)))
}

/// A seeded xoshiro256++ stream with a Box–Muller spare.
#[derive(Debug, Clone)]
pub struct RngState {
    inner: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

/// Independent deterministic generator for `(master_seed, stream_id)`.
///
/// The xoshiro256++ state is the first four outputs of SplitMix64 seeded with
/// `master_seed ^ mix64(stream_id + γ)`, γ being the golden-ratio increment.
pub fn derive_rng(master_seed: u64, stream_id: u64) -> RngState {
    let mut sm = SplitMix64::seed_from_u64(master_seed ^ mix64(stream_id.wrapping_add(GOLDEN_GAMMA)));
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&sm.next_u64().to_le_bytes());
    }
    RngState { inner: Xoshiro256PlusPlus::from_seed(seed), spare: None }
}

impl RngState {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform index in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal deviate by Box–Muller; the sine branch is cached for
    /// the next call.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

/// Haar-distributed orthogonal matrix: Gram–Schmidt (two passes) on a
/// Gaussian matrix, which fixes the sign convention `R_jj > 0`.
pub fn haar_orthogonal(d: usize, rng: &mut RngState) -> Result<Matrix> {
    if d == 0 || d > MAX_EIGEN_DIM {
        return Err(Error::Size { dim: d, cap: MAX_EIGEN_DIM });
    }
    let gaussian: Vec<f64> = (0..d * d).map(|_| rng.gaussian()).collect();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<f64> = (0..d).map(|i| gaussian[i * d + j]).collect();
        for _ in 0..2 {
            for q in &columns {
                let proj: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= proj * qi);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::Domain("rank-deficient Gaussian draw".into()));
        }
        v.iter_mut().for_each(|x| *x /= norm);
        columns.push(v);
    }
    let mut data = vec![0.0; d * d];
    for (j, col) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            data[i * d + j] = x;
        }
    }
    Matrix::from_row_major(d, data)
}

/// SPD matrix with eigenvalues uniform on `[lo, hi]`, conjugated by a Haar
/// orthogonal matrix.
///
/// With `pin_extremes` and `d ≥ 2` the smallest draw is replaced by `lo` and
/// the largest by `hi`. Eigenvalues are drawn before the orthogonal factor.
pub fn spd_in_band(d: usize, lo: f64, hi: f64, rng: &mut RngState, pin_extremes: bool) -> Result<SymMatrix> {
    if !(lo > 0.0) || lo > hi || !hi.is_finite() {
        return Err(Error::Domain(format!("need 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    let mut values: Vec<f64> = (0..d).map(|_| rng.uniform(lo, hi)).collect();
    if pin_extremes && d >= 2 {
        let argmin = (0..d).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
        let argmax = (0..d).rev().max_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
        let argmax = if argmax == argmin { (argmin + 1) % d } else { argmax };
        values[argmin] = lo;
        values[argmax] = hi;
    }
    let q = haar_orthogonal(d, rng)?;
    Ok(q.conjugate_diagonal(&values))
}

/// Families `{A_j}`, `{B_j}` of common dimension, optionally tagged with the
/// band they were drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr")]
pub struct FamilyInstance {
    pub a_list: Vec<SymMatrix>,
    pub b_list: Vec<SymMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<SpectralBand>,
}

#[derive(Deserialize)]
struct FamilyRepr {
    a_list: Vec<SymMatrix>,
    b_list: Vec<SymMatrix>,
    #[serde(default)]
    band: Option<SpectralBand>,
}

impl TryFrom<FamilyRepr> for FamilyInstance {
    type Error = Error;

    fn try_from(r: FamilyRepr) -> Result<Self> {
        FamilyInstance::new(r.a_list, r.b_list, r.band)
    }
}

impl FamilyInstance {
    pub fn new(a_list: Vec<SymMatrix>, b_list: Vec<SymMatrix>, band: Option<SpectralBand>) -> Result<Self> {
        if a_list.is_empty() || a_list.len() != b_list.len() {
            return Err(Error::Shape(format!(
                "families need equal, non-zero lengths (got {} and {})",
                a_list.len(),
                b_list.len()
            )));
        }
        let dim = a_list[0].dim();
        if a_list.iter().chain(&b_list).any(|m| m.dim() != dim) {
            return Err(Error::Shape("all family members must share one dimension".into()));
        }
        Ok(FamilyInstance { a_list, b_list, band })
    }

    /// The single pair `(A, B)`.
    pub fn pair(a: SymMatrix, b: SymMatrix, band: Option<SpectralBand>) -> Result<Self> {
        Self::new(vec![a], vec![b], band)
    }

    pub fn n(&self) -> usize {
        self.a_list.len()
    }

    pub fn dim(&self) -> usize {
        self.a_list[0].dim()
    }

    pub fn is_diagonal(&self) -> bool {
        self.a_list.iter().chain(&self.b_list).all(SymMatrix::is_diagonal)
    }

    /// Every `A_j` has spectrum in `[M, M′]` and every `B_j` in `[m′, m]`,
    /// up to `1e-10` relative slack.
    pub fn check_band(&self, band: &SpectralBand) -> Result<()> {
        const SLACK: f64 = 1e-10;
        let within = |m: &SymMatrix, lo: f64, hi: f64| -> Result<bool> {
            let e = sym_eigen(m)?;
            Ok(e.min_eigenvalue() >= lo * (1.0 - SLACK) && e.max_eigenvalue() <= hi * (1.0 + SLACK))
        };
        for (j, a) in self.a_list.iter().enumerate() {
            if !within(a, band.a_min(), band.a_max())? {
                return Err(Error::Hypothesis(format!("A_{} has spectrum outside [M, M'] = [{}, {}]", j + 1, band.a_min(), band.a_max())));
            }
        }
        for (j, b) in self.b_list.iter().enumerate() {
            if !within(b, band.b_min(), band.b_max())? {
                return Err(Error::Hypothesis(format!("B_{} has spectrum outside [m', m] = [{}, {}]", j + 1, band.b_min(), band.b_max())));
            }
        }
        Ok(())
    }

    /// `(cA_j, cB_j, c·band)`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.a_list.iter().map(|m| m.scale(c)).collect(),
            self.b_list.iter().map(|m| m.scale(c)).collect(),
            self.band.map(|b| b.scaled(c)).transpose()?,
        )
    }
}

/// Draws `A_j ∈ [M, M′]` and `B_j ∈ [m′, m]` for `j = 1..n`, in the order
/// `A_1, B_1, A_2, B_2, …`.
pub fn sample_family(n: usize, d: usize, band: &SpectralBand, rng: &mut RngState, pin_extremes: bool) -> Result<FamilyInstance> {
    let mut a_list = Vec::with_capacity(n);
    let mut b_list = Vec::with_capacity(n);
    for _ in 0..n {
        a_list.push(spd_in_band(d, band.a_min(), band.a_max(), rng, pin_extremes)?);
        b_list.push(spd_in_band(d, band.b_min(), band.b_max(), rng, pin_extremes)?);
    }
    FamilyInstance::new(a_list, b_list, Some(*band))
}

/// Positive tuples `x_j`, `y_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarTuple {
    pub x_list: Vec<f64>,
    pub y_list: Vec<f64>,
    pub band: Option<SpectralBand>,
}

/// With a band, `x_j ~ U[M, M′]` and `y_j ~ U[m′, m]`; without one, both are
/// log-uniform on `[1e-3, 1e3]`. Draw order is `x_1, y_1, x_2, y_2, …`.
pub fn sample_scalars(n: usize, band: Option<&SpectralBand>, rng: &mut RngState) -> ScalarTuple {
    let mut x_list = Vec::with_capacity(n);
    let mut y_list = Vec::with_capacity(n);
    for _ in 0..n {
        match band {
            Some(b) => {
                x_list.push(rng.uniform(b.a_min(), b.a_max()));
                y_list.push(rng.uniform(b.b_min(), b.b_max()));
            }
            None => {
                x_list.push(10f64.powf(rng.uniform(-3.0, 3.0)));
                y_list.push(10f64.powf(rng.uniform(-3.0, 3.0)));
            }
        }
    }
    ScalarTuple { x_list, y_list, band: band.copied() }
}
