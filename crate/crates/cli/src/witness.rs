use std::path::PathBuf;

use callebaut::oracle::{builtin_catalog, replay_witnesses, ReplayOutcome, WitnessRecord};

use crate::error::Result;
use crate::output::{read_jsonl, write_jsonl};
use crate::{EXIT_FAIL, EXIT_OK};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessMode {
    /// Replays a catalog file, or the built-in catalog when absent.
    Replay(Option<PathBuf>),
    /// Writes the built-in catalog.
    Export(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSummary {
    pub outcomes: Vec<ReplayOutcome>,
    /// Records written by an export.
    pub exported: usize,
}

impl WitnessSummary {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_FAIL
        }
    }
}

pub fn run_witness(mode: &WitnessMode) -> Result<WitnessSummary> {
    match mode {
        WitnessMode::Export(path) => {
            let catalog = builtin_catalog();
            write_jsonl(path, &catalog)?;
            Ok(WitnessSummary { outcomes: Vec::new(), exported: catalog.len() })
        }
        WitnessMode::Replay(path) => {
            let catalog: Vec<WitnessRecord> = match path {
                Some(p) => read_jsonl(p)?,
                None => builtin_catalog(),
            };
            Ok(WitnessSummary { outcomes: replay_witnesses(&catalog), exported: 0 })
        }
    }
}
