use std::path::PathBuf;
use std::str::FromStr;

use callebaut::inequalities::{IneqId, Params, ParamKind, Variant};
use callebaut::sampler::SpectralBand;
use callebaut::scalarcore::DELTA_HALF;

use crate::error::{HarnessError, Result};

/// Largest dimension accepted; tensor statements work in dimension `d²`,
/// which must stay within the eigensolver cap.
const MAX_DIM: usize = 8;

/// Which variants a run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantSelection {
    Paper,
    Repaired,
    Both,
}

impl VariantSelection {
    pub fn includes(self, v: Variant) -> bool {
        match self {
            VariantSelection::Paper => v == Variant::PaperLiteral,
            VariantSelection::Repaired => v == Variant::Repaired,
            VariantSelection::Both => true,
        }
    }
}

impl FromStr for VariantSelection {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" | "paper_literal" => Ok(VariantSelection::Paper),
            "repaired" => Ok(VariantSelection::Repaired),
            "both" => Ok(VariantSelection::Both),
            _ => Err(HarnessError::Config(format!("unknown variant selection {s:?} (paper, repaired, both)"))),
        }
    }
}

/// Everything that determines the content of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub master_seed: u64,
    /// Trials per (id, variant, grid point).
    pub trials: usize,
    pub dims: Vec<usize>,
    pub family_sizes: Vec<usize>,
    pub bands: Vec<SpectralBand>,
    /// `(s, t)` are multiples of `1 / pair_grid_denominator`.
    pub pair_grid_denominator: u32,
    /// Weights `α` are multiples of `1 / alpha_grid_denominator`.
    pub alpha_grid_denominator: u32,
    pub tol: f64,
    pub variants: VariantSelection,
    /// Paper-literal violations fail the run.
    pub strict: bool,
    /// Empty means every id.
    pub ids: Vec<IneqId>,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let band = |b: [f64; 4]| SpectralBand::new(b[0], b[1], b[2], b[3]).expect("default band is valid");
        SuiteConfig {
            master_seed: 0,
            trials: 1,
            dims: vec![1, 2, 3, 4],
            family_sizes: vec![1, 2, 3],
            bands: vec![band([1.0, 1.0, 4.0, 4.0]), band([0.5, 1.0, 2.0, 8.0]), band([0.1, 0.2, 5.0, 10.0])],
            pair_grid_denominator: 16,
            alpha_grid_denominator: 8,
            tol: callebaut::matcore::DEFAULT_TOL,
            variants: VariantSelection::Both,
            strict: false,
            ids: Vec::new(),
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(HarnessError::Config(m));
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
            return fail(format!("dims must be non-empty and within 1..={MAX_DIM}, got {:?}", self.dims));
        }
        if self.family_sizes.is_empty() || self.family_sizes.contains(&0) {
            return fail(format!("family sizes must be non-empty and positive, got {:?}", self.family_sizes));
        }
        if self.bands.is_empty() {
            return fail("at least one band is required".into());
        }
        if self.pair_grid_denominator < 2 || self.alpha_grid_denominator < 1 {
            return fail("grid denominators must be at least 2 (pairs) and 1 (weights)".into());
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return fail(format!("tolerance must be finite and non-negative, got {}", self.tol));
        }
        Ok(())
    }

    pub fn selected_ids(&self) -> Vec<IneqId> {
        if self.ids.is_empty() {
            IneqId::ALL.to_vec()
        } else {
            IneqId::ALL.into_iter().filter(|id| self.ids.contains(id)).collect()
        }
    }

    /// Grid points `(s, t)` on both branches, outside the zone around 1/2.
    pub fn pair_grid(&self) -> Vec<(f64, f64)> {
        let n = self.pair_grid_denominator;
        let x = |i: u32| i as f64 / n as f64;
        let mut out = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                let (s, t) = (x(i), x(j));
                if s > 0.5 && (t - 0.5).abs() >= DELTA_HALF {
                    out.push((s, t));
                }
            }
        }
        for i in 0..=n {
            for j in 0..=i {
                let (s, t) = (x(i), x(j));
                if s < 0.5 && (t - 0.5).abs() >= DELTA_HALF {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn alpha_grid(&self) -> Vec<f64> {
        let n = self.alpha_grid_denominator;
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }

    /// Parameter points evaluated for `id`.
    pub fn params_for(&self, id: IneqId) -> Vec<Params> {
        match id.param_kind() {
            ParamKind::Alpha => self.alpha_grid().into_iter().map(|alpha| Params::Alpha { alpha }).collect(),
            ParamKind::Chain => self
                .pair_grid()
                .into_iter()
                .filter(|&(s, t)| s != t)
                .map(|(s, t)| Params::Chain { alpha: 2.0 * t - 1.0, beta: 2.0 * s - 1.0 })
                .collect(),
            ParamKind::Pair => self
                .pair_grid()
                .into_iter()
                .filter(|&(_, t)| id != IneqId::RevT1Remark || t == 1.0)
                .filter(|&(s, _)| id != IneqId::MojMo || (s - 0.5).abs() >= DELTA_HALF)
                .map(|(s, t)| Params::Pair { s, t })
                .collect(),
        }
    }

    pub fn sizes_for(&self, id: IneqId) -> Vec<usize> {
        if id.is_pair_statement() {
            vec![1]
        } else {
            self.family_sizes.clone()
        }
    }
}
