use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use callebaut::inequalities::{list_inequalities, IneqId, Variant};
use callebaut_cli::{
    run_falsify, run_verify, run_witness, HarnessError, SuiteConfig, VariantSelection, WitnessMode, EXIT_CONFIG,
    EXIT_OK,
};

#[derive(Parser)]
#[command(name = "callebaut", version, about = "Verify, falsify and replay Callebaut-type operator inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite over the default or given grids.
    Verify(VerifyArgs),
    /// Search for the most violating instance of one statement.
    Falsify(FalsifyArgs),
    /// Replay or export the witness catalog.
    Witness(WitnessArgs),
    /// List every registered statement.
    List,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Comma-separated family sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = callebaut::matcore::DEFAULT_TOL)]
    tol: f64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// paper, repaired or both.
    #[arg(long, default_value = "both")]
    variant: String,
    /// Fail on paper-literal violations too.
    #[arg(long)]
    strict: bool,
    /// Restrict to these ids (repeatable).
    #[arg(long = "id")]
    ids: Vec<String>,
    #[arg(long, default_value = "report.jsonl")]
    out: PathBuf,
}

#[derive(Args)]
struct FalsifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    id: String,
    #[arg(long, default_value = "paper")]
    variant: String,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Also write the best record here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WitnessArgs {
    /// Replay the built-in catalog, or the catalog at PATH.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    replay: Option<Option<PathBuf>>,
    /// Write the built-in catalog to PATH.
    #[arg(long, value_name = "PATH")]
    export: Option<PathBuf>,
}

fn config_err(e: callebaut::Error) -> HarnessError {
    HarnessError::Config(e.to_string())
}

fn base_config(c: &Common) -> Result<SuiteConfig, HarnessError> {
    if let Some(jobs) = c.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
    }
    let mut config = SuiteConfig { master_seed: c.seed, tol: c.tol, ..SuiteConfig::default() };
    if let Some(d) = &c.dims {
        config.dims = d.clone();
    }
    if let Some(n) = &c.sizes {
        config.family_sizes = n.clone();
    }
    Ok(config)
}

fn verify(args: VerifyArgs) -> Result<i32, HarnessError> {
    let mut config = base_config(&args.common)?;
    config.trials = args.trials;
    config.variants = args.variant.parse::<VariantSelection>()?;
    config.strict = args.strict;
    config.ids = args.ids.iter().map(|s| s.parse::<IneqId>()).collect::<Result<_, _>>().map_err(config_err)?;
    config.out = Some(args.out.clone());
    let outcome = run_verify(&config)?;
    let s = &outcome.summary;
    println!("{:<16} {:<14} {:>9} {:>9} {:>9} {:>14}", "id", "variant", "evaluated", "satisfied", "violated", "min_rel_gap");
    for r in &s.rows {
        println!(
            "{:<16} {:<14} {:>9} {:>9} {:>9} {:>14.6e}",
            r.id.name(),
            r.variant.name(),
            r.evaluated,
            r.satisfied,
            r.violated,
            r.min_rel_gap
        );
    }
    println!("verdict: {:?}; {} records in {}; wall time {:.2?}", s.verdict, outcome.records.len(), args.out.display(), s.wall_time);
    Ok(s.exit_code())
}

fn falsify(args: FalsifyArgs) -> Result<i32, HarnessError> {
    let config = base_config(&args.common)?;
    let id: IneqId = args.id.parse().map_err(config_err)?;
    let variant: Variant = args.variant.parse().map_err(config_err)?;
    let result = run_falsify(id, variant, args.budget, &config)?;
    let json = serde_json::to_string(&result).expect("result serialises");
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{json}\n")).map_err(|e| HarnessError::Io { path: path.display().to_string(), source: e })?;
    }
    println!("{json}");
    Ok(result.exit_code())
}

fn witness(args: WitnessArgs) -> Result<i32, HarnessError> {
    let mode = match (args.replay, args.export) {
        (Some(path), None) => WitnessMode::Replay(path),
        (None, Some(path)) => WitnessMode::Export(path),
        _ => return Err(HarnessError::Config("exactly one of --replay and --export is required".into())),
    };
    let summary = run_witness(&mode)?;
    if let WitnessMode::Export(path) = &mode {
        println!("exported {} records to {}", summary.exported, path.display());
    }
    for o in &summary.outcomes {
        let fmt = |g: Option<f64>| g.map_or("-".to_string(), |g| format!("{g:.10}"));
        println!(
            "{} {:<28} expected {:.10} ± {:e}  matrix {}  scalar {}{}",
            if o.passed { "PASS" } else { "FAIL" },
            o.label,
            o.expected_gap,
            o.tolerance,
            fmt(o.matrix_gap),
            fmt(o.scalar_gap),
            o.error.as_deref().map(|e| format!("  ({e})")).unwrap_or_default()
        );
    }
    if !matches!(mode, WitnessMode::Export(_)) {
        let passed = summary.outcomes.iter().filter(|o| o.passed).count();
        println!("{passed}/{} records pass", summary.outcomes.len());
    }
    Ok(summary.exit_code())
}

fn list() -> i32 {
    for e in list_inequalities() {
        let variants: Vec<&str> = e.variants.iter().map(|v| v.name()).collect();
        println!("{:<16} {:<28} {}\n{:<16} {}", e.id.name(), variants.join(","), e.description, "", e.statement);
    }
    EXIT_OK
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Falsify(a) => falsify(a),
        Command::Witness(a) => witness(a),
        Command::List => Ok(list()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
