use std::path::PathBuf;
use std::process::ExitCode;

use charsum_lab::report::render;
use charsum_lab::{emit, run_experiment, Config, Format, LabError, EXPERIMENTS};
use clap::Parser;

/// Run a character-sum experiment and write its report.
#[derive(Debug, Parser)]
#[command(name = "charsum-lab", version, after_help = experiments_help())]
struct Cli {
    /// Experiment to run.
    experiment: String,
    #[arg(long)]
    q_max: Option<String>,
    #[arg(long)]
    q_min: Option<String>,
    #[arg(long)]
    p_max: Option<String>,
    #[arg(long)]
    p_min: Option<String>,
    /// Comma-separated ε values (rationals with denominator at most 100).
    #[arg(long)]
    eps: Option<String>,
    /// Bound profile, e.g. `a=logpow:4,R=logpow:2.5,c=logpow:3,l=const:1`.
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Worker threads (default: all cores). Does not affect the report.
    #[arg(long)]
    workers: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Flat key=value file; command-line options override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Any other parameter, as key=value. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn experiments_help() -> String {
    format!("Experiments: {}", EXPERIMENTS.join(", "))
}

fn run(cli: Cli) -> Result<ExitCode, LabError> {
    let format: Format = cli.format.parse()?;
    let mut config = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::new(),
    };
    let flags = [
        ("q_max", &cli.q_max),
        ("q_min", &cli.q_min),
        ("p_max", &cli.p_max),
        ("p_min", &cli.p_min),
        ("eps", &cli.eps),
        ("profile", &cli.profile),
        ("seed", &cli.seed),
        ("workers", &cli.workers),
    ];
    for pair in &cli.set {
        config.set_pair(pair)?;
    }
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, v);
        }
    }
    let report = run_experiment(&cli.experiment, &config)?;
    match &cli.out {
        Some(path) => emit(&report, format, path)?,
        None => print!("{}", render(&report, format)),
    }
    let violations = report.summary.get("violations").and_then(|v| v.as_u64()).unwrap_or(0);
    if cli.experiment == "verify-identities" && violations > 0 {
        eprintln!("charsum-lab: {violations} identity violations");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("charsum-lab: {e}");
            ExitCode::from(1)
        }
    }
}
