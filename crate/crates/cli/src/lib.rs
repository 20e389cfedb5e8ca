//! Verification, falsification and witness-replay harness.
//!
//! Every run is a pure function of its [`SuiteConfig`]: each trial draws its
//! instance from a stream derived from the trial's coordinates, so reports
//! are identical whatever the degree of parallelism.

mod config;
mod error;
mod falsify;
mod output;
mod verify;
mod witness;

pub use config::{SuiteConfig, VariantSelection};
pub use error::{HarnessError, Result};
pub use falsify::{run_falsify, FalsifyResult};
pub use output::{read_jsonl, summary_path, write_jsonl, write_summary_csv};
pub use verify::{run_verify, RunSummary, SummaryRow, Verdict, VerifyOutcome};
pub use witness::{run_witness, WitnessMode, WitnessSummary};

/// Pass, or only paper-literal findings.
pub const EXIT_OK: i32 = 0;
/// Unexpected violation, witness mismatch or run failure.
pub const EXIT_FAIL: i32 = 2;
/// Invalid configuration or command line.
pub const EXIT_CONFIG: i32 = 64;
