use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use callebaut::inequalities::{evaluate_inequality, IneqId, Params, Variant};
use callebaut::report::ReportRecord;
use callebaut::sampler::{derive_rng, sample_family, stream_hash};

use crate::config::SuiteConfig;
use crate::error::Result;
use crate::output::{summary_path, write_jsonl, write_summary_csv};
use crate::{EXIT_FAIL, EXIT_OK};

/// Tag mixed into verification stream ids.
const VERIFY_TAG: u64 = 0x7665_7269_6679;

/// Counts for one (id, variant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub id: IneqId,
    pub variant: Variant,
    pub evaluated: usize,
    pub satisfied: usize,
    pub violated: usize,
    pub min_rel_gap: f64,
}

/// Overall verdict of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Only paper-literal statements that have a repair were violated.
    Findings,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub rows: Vec<SummaryRow>,
    pub wall_time: Duration,
    pub verdict: Verdict,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Fail => EXIT_FAIL,
            _ => EXIT_OK,
        }
    }

    pub fn row(&self, id: IneqId, variant: Variant) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.id == id && r.variant == variant)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub summary: RunSummary,
    /// Sorted by (id, variant, stream).
    pub records: Vec<ReportRecord>,
}

#[derive(Debug, Clone, Copy)]
struct Task {
    id: IneqId,
    variant: Variant,
    band: usize,
    dim: usize,
    n: usize,
    params: Params,
    stream: u64,
}

fn variant_code(v: Variant) -> u64 {
    match v {
        Variant::PaperLiteral => 0,
        Variant::Repaired => 1,
    }
}

fn id_code(id: IneqId) -> u64 {
    IneqId::ALL.iter().position(|&x| x == id).expect("id is registered") as u64
}

fn tasks(config: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for id in config.selected_ids() {
        for &variant in id.variants().iter().filter(|&&v| config.variants.includes(v)) {
            for (p_idx, params) in config.params_for(id).into_iter().enumerate() {
                for (b_idx, _) in config.bands.iter().enumerate() {
                    for &dim in &config.dims {
                        for n in config.sizes_for(id) {
                            for trial in 0..config.trials {
                                let stream = stream_hash(&[
                                    VERIFY_TAG,
                                    id_code(id),
                                    variant_code(variant),
                                    b_idx as u64,
                                    dim as u64,
                                    n as u64,
                                    p_idx as u64,
                                    trial as u64,
                                ]);
                                out.push(Task { id, variant, band: b_idx, dim, n, params, stream });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn run_task(config: &SuiteConfig, task: &Task) -> Result<ReportRecord> {
    let band = &config.bands[task.band];
    let mut rng = derive_rng(config.master_seed, task.stream);
    let inst = sample_family(task.n, task.dim, band, &mut rng, false)?;
    let report = evaluate_inequality(task.id, &inst, &task.params, task.variant, config.tol)?;
    Ok(ReportRecord::from_report(&report, config.master_seed, task.stream))
}

/// Violations of this (id, variant) are unexpected: repaired forms and
/// paper-literal statements that have no repair.
pub(crate) fn violation_is_failure(id: IneqId, variant: Variant, strict: bool) -> bool {
    strict || variant == Variant::Repaired || !id.supports(Variant::Repaired)
}

pub(crate) fn summarise(records: &[ReportRecord], strict: bool, wall_time: Duration) -> RunSummary {
    let mut rows: BTreeMap<(IneqId, Variant), SummaryRow> = BTreeMap::new();
    for r in records {
        let row = rows.entry((r.id, r.variant)).or_insert(SummaryRow {
            id: r.id,
            variant: r.variant,
            evaluated: 0,
            satisfied: 0,
            violated: 0,
            min_rel_gap: f64::INFINITY,
        });
        row.evaluated += 1;
        if r.satisfied {
            row.satisfied += 1;
        } else {
            row.violated += 1;
        }
        row.min_rel_gap = row.min_rel_gap.min(r.min_rel_gap);
    }
    let rows: Vec<SummaryRow> = rows.into_values().collect();
    let violated = |r: &&SummaryRow| r.violated > 0;
    let verdict = if rows.iter().filter(violated).any(|r| violation_is_failure(r.id, r.variant, strict)) {
        Verdict::Fail
    } else if rows.iter().any(|r| r.violated > 0) {
        Verdict::Findings
    } else {
        Verdict::Pass
    };
    RunSummary { rows, wall_time, verdict }
}

/// Runs the verification suite and writes the report (and its CSV summary)
/// when `config.out` is set.
pub fn run_verify(config: &SuiteConfig) -> Result<VerifyOutcome> {
    config.validate()?;
    let start = Instant::now();
    let mut records = tasks(config).par_iter().map(|t| run_task(config, t)).collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.id, r.variant, r.stream));
    let summary = summarise(&records, config.strict, start.elapsed());
    if let Some(out) = &config.out {
        write_jsonl(out, &records)?;
        write_summary_csv(&summary_path(out), &summary.rows)?;
    }
    Ok(VerifyOutcome { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_distinct() {
        let t = tasks(&SuiteConfig::default());
        let mut streams: Vec<u64> = t.iter().map(|t| t.stream).collect();
        streams.sort_unstable();
        streams.dedup();
        assert_eq!(streams.len(), t.len());
    }

    #[test]
    fn failure_policy() {
        assert!(violation_is_failure(IneqId::HadMaman, Variant::Repaired, false));
        assert!(!violation_is_failure(IneqId::HadMaman, Variant::PaperLiteral, false));
        assert!(violation_is_failure(IneqId::HadMaman, Variant::PaperLiteral, true));
        assert!(violation_is_failure(IneqId::Chain34rf, Variant::PaperLiteral, false));
    }
}
