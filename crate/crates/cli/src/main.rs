//! `ptnls`: branch sweeps, ground states, critical constants and checks for
//! the NLS with a jump-plus-delta point interaction.

mod commands;
mod config;
mod error;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use error::CliError;

#[derive(Parser)]
#[command(name = "ptnls", version, about = "Standing waves of the NLS with a jump-plus-delta point interaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON file with default values for any flag
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: RunConfig,
}

impl Common {
    fn resolve(self) -> Result<RunConfig, CliError> {
        match &self.config {
            Some(path) => Ok(self.run.over(RunConfig::load(path)?)),
            None => Ok(self.run),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate both branches over a frequency range
    Branch(Common),
    /// Ground state at mass --mu
    GroundState(Common),
    /// Critical masses and GN constant for --tau (sigma = 2)
    Critical(Common),
    /// Discrete constrained energy minimization at mass --mu
    Minimize(Common),
    /// Run the built-in checks (all, or --checks 1,2,...)
    Verify(Common),
    /// SVG of the stationary profiles at --omega
    Plot(Common),
}

fn report(paths: Vec<PathBuf>) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Branch(c) => report(commands::branch(&c.resolve()?)?),
        Command::GroundState(c) => report(commands::ground_state(&c.resolve()?)?),
        Command::Minimize(c) => report(commands::minimize(&c.resolve()?)?),
        Command::Plot(c) => report(commands::plot(&c.resolve()?)?),
        Command::Critical(c) => print!("{}", commands::critical(&c.resolve()?)?),
        Command::Verify(c) => print!("{}", commands::verify(&c.resolve()?)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ptnls: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
