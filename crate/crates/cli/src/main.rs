use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use packetlab_cli::{parse_config, run, CliError, Experiment, Overrides};

/// Run a single-particle interference experiment and write its histogram
/// (`<out>.csv`) and summary (`<out>.json`).
#[derive(Debug, Parser)]
#[command(name = "packetlab", version)]
struct Cli {
    #[arg(value_enum)]
    experiment: Experiment,
    /// JSON object or `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    bins: Option<usize>,
    /// Output path prefix; defaults to the experiment name.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Experiment parameter, `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| {
            packetlab_cli::ConfigError::Malformed(format!("{}: {e}", path.display()))
        })?),
        None => None,
    };
    let overrides = Overrides {
        seed: cli.seed,
        samples: cli.samples,
        bins: cli.bins,
        out: cli.out,
        params: cli.params,
    };
    let config = parse_config(cli.experiment, file.as_deref(), &overrides)?;
    let written = run(&config)?;
    if let Some(csv) = &written.csv {
        println!("{}", csv.display());
    }
    println!("{}", written.json.display());
    Ok(())
}
