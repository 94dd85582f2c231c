use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use khl::harness::{emit_report, parse_scenario, run_suite, HarnessError, ReportFormat, Suite};

/// Exact verification suites for Koszul-type homology, driven by scenario
/// files. Exit code 0 means every non-conjecture check passed, 1 means a
/// verification failed, 2 means the input was unusable.
#[derive(Parser)]
#[command(name = "khl", version, disable_help_subcommand = true)]
struct Cli {
    /// Suite to run (`khl list-suites` prints the catalogue), or `all`
    suite: String,

    /// Scenario file: JSON with suite, ring, ideal, rank, n, window, seed
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report format: json, csv, or text
    #[arg(long, default_value = "json", value_name = "FMT")]
    format: String,

    /// Override the scenario's internal-degree window
    #[arg(long, value_name = "D")]
    window: Option<i64>,

    /// Override the scenario's random seed
    #[arg(long, value_name = "S")]
    seed: Option<u64>,

    /// Worker threads for independent checks (default: all cores)
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("khl: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    if cli.suite == "list-suites" {
        for s in Suite::catalogue() {
            println!("{s}");
        }
        println!("all");
        return Ok(ExitCode::SUCCESS);
    }
    let suite: Suite = cli.suite.parse()?;
    let format: ReportFormat = cli.format.parse()?;
    let Some(config) = &cli.config else {
        return Err(HarnessError::Validation {
            message: format!("missing --config for suite {suite} (a scenario JSON file)"),
        });
    };
    let mut cfg = parse_scenario(config)?.with_suite(suite)?;
    if let Some(w) = cli.window {
        cfg.window = w;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let threads = cli.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(usize::from)
            .unwrap_or(1)
    });
    let report = run_suite(&cfg, threads)?;
    let rendered = emit_report(&report, format);
    let out_path = cli.out.clone().or_else(|| cfg.out.clone().map(PathBuf::from));
    match out_path {
        Some(p) => std::fs::write(&p, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1)))
}
