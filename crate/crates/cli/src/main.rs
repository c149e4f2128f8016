use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use insertion_cli::scenario::{DEFAULT_DEPTH, DEFAULT_SEED};
use insertion_cli::{
    check_file, replay_file, reproduce_ids, survey_rows, write_csv, write_file, CliError, RunOptions, RunReport,
    EXIT_INPUT, EXIT_MISMATCH, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "insertion", version, about = "Insertion and interpolation checks with replayable certificates")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Depth budget for scenarios that do not set one.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Seed for scenarios that generate their instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and compare verdicts with expectations.
    Check { scenario: PathBuf },
    /// Run a catalog example (or `all`) against its golden verdicts.
    Reproduce { id: String },
    /// CSV of normality against insertion feasibility for every small topology.
    Survey {
        #[arg(long)]
        max_size: usize,
    },
    /// Re-verify every certificate in a saved report.
    Replay { report: PathBuf },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write { path: "stdout".into(), source }),
    }
}

fn finish(cli: &Cli, report: RunReport) -> Result<u8, CliError> {
    emit(&cli.out, &report.to_json())?;
    for d in report.entries.iter().filter_map(|e| e.diff()) {
        eprintln!("mismatch {d}");
    }
    Ok(if report.all_match { EXIT_OK } else { EXIT_MISMATCH })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let opts = RunOptions { depth: cli.depth, seed: cli.seed };
    match &cli.command {
        Command::Check { scenario } => finish(cli, check_file(scenario, opts)?),
        Command::Reproduce { id } => finish(cli, reproduce_ids(id, cli.depth)?),
        Command::Survey { max_size } => {
            let rows = survey_rows(*max_size)?;
            match &cli.out {
                Some(p) => {
                    let file = std::fs::File::create(p)
                        .map_err(|source| CliError::Write { path: p.display().to_string(), source })?;
                    write_csv(&rows, file)?;
                }
                None => write_csv(&rows, io::stdout().lock())?,
            }
            Ok(EXIT_OK)
        }
        Command::Replay { report } => {
            let summary = replay_file(report)?;
            let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
            emit(&cli.out, &text)?;
            for f in &summary.failures {
                eprintln!("replay failed in {}: {} ({})", f.entry, f.kind, f.reason);
            }
            Ok(if summary.failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
