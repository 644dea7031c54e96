use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use stratakit::analyze::DEFAULT_N_MAX;
use stratakit::cli::{cmd_check, cmd_corpus, cmd_validate, CheckOptions, Mode, Report};
use stratakit::Error;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "stratakit", version, about = "Stratifications of module categories of finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Random seed; STRATAKIT_SEED takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and check its axioms, and those of any stratification or gluing data.
    Validate { path: PathBuf },
    /// Run one family of checks on a spec file.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Highest Ext degree examined.
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n: usize,
        /// Exhaustive filtration search (finite fields only).
        #[arg(long)]
        oracle: bool,
    },
    /// Run the bundled fixtures.
    Corpus {
        /// Only fixtures with this tag.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn seed(flag: u64) -> Result<u64, String> {
    match std::env::var("STRATAKIT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| format!("STRATAKIT_SEED is not an unsigned integer: {v:?}")),
        Err(_) => Ok(flag),
    }
}

fn read(path: &PathBuf, seed: u64, command: &str) -> Result<Vec<u8>, Report> {
    std::fs::read(path).map_err(|e| Report::new(command, seed).fail_with(&Error::Parse(format!("{}: {e}", path.display()))))
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if let Some(e) = &report.error {
        eprintln!("error {}: {}", e.kind, e.message);
    }
    ExitCode::from(report.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match seed(cli.seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let clock = Instant::now();
    let elapsed = |timing: bool| timing.then(|| clock.elapsed().as_secs_f64());
    match &cli.command {
        Command::Validate { path } => {
            let mut report = read(path, seed, "validate").map_or_else(|r| r, |b| cmd_validate(&b, seed));
            report.timing = elapsed(cli.timing);
            emit(&report, cli.format)
        }
        Command::Check { path, mode, n, oracle } => {
            let opts = CheckOptions { mode: *mode, n: *n, oracle: *oracle, seed };
            let mut report = read(path, seed, "check").map_or_else(|r| r, |b| cmd_check(&b, &opts));
            report.timing = elapsed(cli.timing);
            emit(&report, cli.format)
        }
        Command::Corpus { filter } => {
            let mut report = cmd_corpus(filter.as_deref(), seed);
            report.timing = elapsed(cli.timing);
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code as u8)
        }
    }
}
