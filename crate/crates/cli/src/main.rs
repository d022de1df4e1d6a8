mod check;
mod config;
mod model;
mod output;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Common, Format};

/// Interferometer simulation, no-go checks and ontological model tools.
#[derive(Parser)]
#[command(name = "ontic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the phase and print port probabilities.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Run a no-go check and print its report.
    Check {
        #[arg(value_parser = ["pbr", "hroi", "hroi2"])]
        theorem: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build, lift or audit model files.
    Model {
        #[command(subcommand)]
        action: model::Action,
    },
}

/// A failed command: message for stderr and process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<ontic::Error> for Failure {
    fn from(e: ontic::Error) -> Self {
        let code = if matches!(e, ontic::Error::Internal(_)) { 2 } else { 1 };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { common } => common.resolve(Format::Csv).and_then(|s| simulate::run(&s)),
        Command::Check { theorem, common } => common.resolve(Format::Json).and_then(|s| check::run(&theorem, &s)),
        Command::Model { action } => model::run(action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
