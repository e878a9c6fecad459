mod commands;
mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use commands::{exit, Outcome};
use config::{Command, RunConfig};

/// Separating elements for two-sided and differential ideals.
#[derive(Parser)]
#[command(name = "sepforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Separate a subspace of a polynomial ring with respect to differential ideals.
    SeparateDiff(RunArgs),
    /// Separate a subspace of a noncommutative algebra with respect to two-sided ideals.
    SeparateMod(RunArgs),
    /// Find an element with prime-field coefficients in an ideal.
    Witness(RunArgs),
    /// Turn a report's elements into a divisibility chain.
    Chain(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timestamp out of the report.
    #[arg(long)]
    no_timestamp: bool,
}

fn run(command: Command, args: &RunArgs) -> Outcome {
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return config::ConfigError(format!("cannot read {}: {e}", args.config.display())).into(),
    };
    let config = match RunConfig::parse(&text).and_then(|c| c.validate(command).map(|()| c)) {
        Ok(c) => c,
        Err(e) => return e.into(),
    };
    match command {
        Command::SeparateDiff => commands::separate_diff(&config),
        Command::SeparateMod => commands::separate_mod(&config),
        Command::Witness => commands::witness(&config),
        Command::Chain => {
            let dir = args.config.parent().unwrap_or(Path::new("."));
            commands::chain_command(&config, dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Sub::SeparateDiff(a) => (Command::SeparateDiff, a),
        Sub::SeparateMod(a) => (Command::SeparateMod, a),
        Sub::Witness(a) => (Command::Witness, a),
        Sub::Chain(a) => (Command::Chain, a),
    };
    let mut outcome = run(command, args);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("sepforge: {msg}");
    }
    if let Some(report) = outcome.report.as_mut() {
        if !args.no_timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            report["timestamp"] = secs.into();
        }
        let mut text = serde_json::to_string_pretty(report).expect("report serializes");
        text.push('\n');
        let written = match &args.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            eprintln!("sepforge: {e}");
            return ExitCode::from(exit::CONFIG);
        }
    }
    ExitCode::from(outcome.code)
}
