use rayon::prelude::*;
use serde::Serialize;

use callebaut::inequalities::{evaluate_inequality, IneqId, ParamKind, Params, Variant};
use callebaut::report::ReportRecord;
use callebaut::sampler::{derive_rng, sample_family, stream_hash, FamilyInstance, RngState};
use callebaut::Error;

use crate::config::SuiteConfig;
use crate::error::{HarnessError, Result};
use crate::verify::violation_is_failure;
use crate::{EXIT_FAIL, EXIT_OK};

const FALSIFY_TAG: u64 = 0x0066_616c_7369_6679;
const REFINEMENT_STEPS: usize = 50;
/// Keeps sampled `s` away from the excluded zone around 1/2.
const HALF_MARGIN: f64 = 1e-3;

/// Most negative relative gap found by a search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalsifyResult {
    pub id: IneqId,
    pub variant: Variant,
    pub evaluated: usize,
    pub best: Option<ReportRecord>,
}

impl FalsifyResult {
    pub fn found_violation(&self) -> bool {
        self.best.as_ref().is_some_and(|b| !b.satisfied)
    }

    /// Violations of statements expected to hold fail the run.
    pub fn exit_code(&self) -> i32 {
        if self.found_violation() && violation_is_failure(self.id, self.variant, false) {
            EXIT_FAIL
        } else {
            EXIT_OK
        }
    }
}

fn random_pair(id: IneqId, rng: &mut RngState) -> (f64, f64) {
    if id == IneqId::RevT1Remark || rng.below(2) == 0 {
        let s = rng.uniform(0.5 + HALF_MARGIN, 1.0);
        let t = if id == IneqId::RevT1Remark || rng.below(4) == 0 { 1.0 } else { rng.uniform(s, 1.0) };
        (s, t)
    } else {
        let s = rng.uniform(0.0, 0.5 - HALF_MARGIN);
        let t = if rng.below(4) == 0 { 0.0 } else { rng.uniform(0.0, s) };
        (s, t)
    }
}

fn random_params(id: IneqId, rng: &mut RngState) -> Params {
    match id.param_kind() {
        ParamKind::Alpha => Params::Alpha { alpha: rng.next_f64() },
        ParamKind::Pair => {
            let (s, t) = random_pair(id, rng);
            Params::Pair { s, t }
        }
        ParamKind::Chain => {
            let (s, t) = random_pair(id, rng);
            Params::Chain { alpha: 2.0 * t - 1.0, beta: 2.0 * s - 1.0 }
        }
    }
}

fn coordinates(p: &Params) -> Vec<f64> {
    match *p {
        Params::Pair { s, t } => vec![s, t],
        Params::Chain { alpha, beta } => vec![alpha, beta],
        Params::Alpha { alpha } => vec![alpha],
    }
}

fn with_coordinates(p: &Params, c: &[f64]) -> Params {
    match p {
        Params::Pair { .. } => Params::Pair { s: c[0], t: c[1] },
        Params::Chain { .. } => Params::Chain { alpha: c[0], beta: c[1] },
        Params::Alpha { .. } => Params::Alpha { alpha: c[0] },
    }
}

struct Candidate {
    inst: FamilyInstance,
    stream: u64,
    record: ReportRecord,
}

/// Evaluates, treating parameters outside the hypotheses as no candidate.
fn try_evaluate(id: IneqId, variant: Variant, inst: &FamilyInstance, params: &Params, seed: u64, stream: u64, tol: f64) -> Result<Option<ReportRecord>> {
    match evaluate_inequality(id, inst, params, variant, tol) {
        Ok(r) => Ok(Some(ReportRecord::from_report(&r, seed, stream))),
        Err(Error::Hypothesis(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn sample_candidate(id: IneqId, variant: Variant, config: &SuiteConfig, k: usize) -> Result<Option<Candidate>> {
    let stream = stream_hash(&[FALSIFY_TAG, id as u64, variant as u64, k as u64]);
    let mut rng = derive_rng(config.master_seed, stream);
    let band = config.bands[rng.below(config.bands.len())];
    let dim = config.dims[rng.below(config.dims.len())];
    let sizes = config.sizes_for(id);
    let n = sizes[rng.below(sizes.len())];
    let params = random_params(id, &mut rng);
    let inst = sample_family(n, dim, &band, &mut rng, true)?;
    let record = try_evaluate(id, variant, &inst, &params, config.master_seed, stream, config.tol)?;
    Ok(record.map(|record| Candidate { inst, stream, record }))
}

/// Coordinate-wise descent on the parameters of `best`, instance fixed.
fn refine(id: IneqId, variant: Variant, config: &SuiteConfig, best: &mut Candidate) -> Result<()> {
    let mut step = 1.0 / 16.0;
    let dims = coordinates(&best.record.params).len();
    for i in 0..REFINEMENT_STEPS {
        let axis = i % dims;
        let mut improved = false;
        for sign in [1.0, -1.0] {
            let mut c = coordinates(&best.record.params);
            c[axis] += sign * step;
            let params = with_coordinates(&best.record.params, &c);
            if let Some(r) = try_evaluate(id, variant, &best.inst, &params, config.master_seed, best.stream, config.tol)? {
                if r.min_rel_gap < best.record.min_rel_gap {
                    best.record = r;
                    improved = true;
                }
            }
        }
        if !improved && axis == dims - 1 {
            step *= 0.5;
        }
    }
    Ok(())
}

/// Random search with band-edge pinning over `budget` candidates followed by
/// local refinement of the best one.
pub fn run_falsify(id: IneqId, variant: Variant, budget: usize, config: &SuiteConfig) -> Result<FalsifyResult> {
    config.validate()?;
    if !id.supports(variant) {
        return Err(HarnessError::Config(format!("{id} has no {variant} variant")));
    }
    let candidates = (0..budget)
        .into_par_iter()
        .map(|k| sample_candidate(id, variant, config, k))
        .collect::<Result<Vec<_>>>()?;
    let evaluated = candidates.iter().filter(|c| c.is_some()).count();
    let mut best = candidates
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.record.min_rel_gap < a.record.min_rel_gap { b } else { a });
    if let Some(b) = best.as_mut() {
        refine(id, variant, config, b)?;
    }
    Ok(FalsifyResult { id, variant, evaluated, best: best.map(|b| b.record) })
}
