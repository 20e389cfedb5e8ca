//! Line-delimited report records.
//!
//! One [`ReportRecord`] is written per evaluated instance. The witness
//! catalog reuses the same schema with two extra fields.

use serde::{Deserialize, Serialize};

use crate::inequalities::{IneqId, IneqReport, Params, Variant};
use crate::sampler::{FamilyInstance, SpectralBand};

/// Per-link verdict as written to reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub name: String,
    pub min_eig: f64,
    pub rel_gap: f64,
    pub satisfied: bool,
}

/// One report line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: IneqId,
    pub variant: Variant,
    pub seed: u64,
    pub stream: u64,
    pub n: usize,
    pub dim: usize,
    pub band: Option<SpectralBand>,
    #[serde(flatten)]
    pub params: Params,
    pub links: Vec<LinkRecord>,
    pub min_gap: f64,
    pub min_rel_gap: f64,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FamilyInstance>,
}

impl ReportRecord {
    pub fn from_report(report: &IneqReport, seed: u64, stream: u64) -> Self {
        ReportRecord {
            id: report.id,
            variant: report.variant,
            seed,
            stream,
            n: report.n,
            dim: report.dim,
            band: report.band,
            params: report.params,
            links: report
                .links
                .iter()
                .map(|l| LinkRecord {
                    name: l.name.clone(),
                    min_eig: l.gap.min_eig,
                    rel_gap: l.gap.rel_gap,
                    satisfied: l.gap.satisfied,
                })
                .collect(),
            min_gap: report.min_gap,
            min_rel_gap: report.gap.rel_gap,
            satisfied: report.satisfied(),
            witness: report.witness.clone(),
        }
    }
}
