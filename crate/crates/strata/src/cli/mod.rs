//! Model ingestion, command dispatch and reporting for the `strata` binary.
//!
//! ```bash
//! strata --input model.json                # reports to stdout
//! strata --input model.json --output out.json --seed 7 --no-verify
//! ```
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invariant violation,
//! 3 identity-check failure (either a failed embedded assertion or a failed
//! `check` suite).

pub mod exec;
pub mod model;
pub mod poly;

use std::time::Instant;

use clap::Parser;

use crate::error::{Error, Result};
use exec::ExecOptions;
use model::SpaceField;

#[derive(Parser, Debug)]
#[command(
    name = "strata",
    version,
    about = "Exact characteristic numbers of multiple points, singularity strata, and Morin maps"
)]
pub struct Cli {
    /// Path to the JSON model file.
    #[arg(long)]
    pub input: std::path::PathBuf,

    /// Output path, or '-' for stdout.
    #[arg(long, default_value = "-")]
    pub output: String,

    /// Seed for randomized check suites that do not pin their own.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Disable the embedded identity assertions inside product operations.
    #[arg(long)]
    pub no_verify: bool,

    /// Default coefficient field (Q or F2) where a command is ambiguous.
    #[arg(long)]
    pub field: Option<String>,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 1;
        }
    };
    match run_with(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the full pipeline: load, execute every command, write the report
/// envelope. Returns the process exit code.
pub fn run_with(cli: &Cli) -> Result<i32> {
    let started = Instant::now();
    let model = model::load_model(&cli.input)?;
    let default_field = match cli.field.as_deref() {
        None => None,
        Some("Q") => Some(SpaceField::Rat),
        Some("F2") => Some(SpaceField::F2),
        Some(other) => {
            return Err(Error::Usage(format!("--field must be Q or F2, got {other:?}")))
        }
    };
    let opts = ExecOptions { seed: cli.seed, verify: !cli.no_verify, default_field };

    let mut reports = Vec::new();
    for command in &model.commands {
        reports.push(exec::execute(&model, command, &opts)?);
    }
    let any_failed = reports.iter().any(|r| r.checks.iter().any(|c| !c.pass));

    let envelope = serde_json::json!({
        "reports": reports,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable"));
    if cli.output == "-" {
        print!("{text}");
    } else {
        std::fs::write(&cli.output, text)?;
    }
    Ok(if any_failed { 3 } else { 0 })
}
