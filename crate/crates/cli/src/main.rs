//! `darwin`: run configured experiments, print attractor dimensions, regenerate figure data.

mod config;
mod dims;
mod output;
mod reproduce;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use darwin_core::attractor::{Parity, Regime};
use thiserror::Error;

use crate::config::{resolve_cap, ExperimentConfig, Model};
use crate::reproduce::Figure;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] darwin_core::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "darwin", version, about = "Quantum Darwinism density-matrix experiments")]
struct Cli {
    /// Largest register in qubits [env: DARWIN_MAX_QUBITS, default 14]
    #[arg(long, global = true)]
    max_qubits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RegimeArg {
    MaxKoenig,
    MinStrong,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write pip.csv and summary.json
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Parity of the step count for the asymptotic model; overrides the config
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
    /// Print stated, counted and numeric attractor dimensions
    Dims {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        phi: f64,
    },
    /// Regenerate the datasets of one figure, one CSV per curve
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cap = resolve_cap(cli.max_qubits)?;
    match cli.command {
        Command::Run { config, out, parity } => {
            let mut c = ExperimentConfig::load(&config)?;
            if let Some(p) = parity {
                if c.model != Model::RandomUnitaryAsymptotic {
                    return Err(CliError::Config("invalid `--parity`: only the asymptotic model takes a parity".into()));
                }
                c.parity = Some(match p {
                    ParityArg::Even => Parity::Even,
                    ParityArg::Odd => Parity::Odd,
                });
            }
            let v = c.validate(cap)?;
            let outcome = run::execute(&v, cap)?;
            output::write_run(&out, &c, &outcome)?;
            let r = &outcome.redundancy;
            match (r.f_star, r.r) {
                (Some(f), Some(big_r)) => println!("plateau at f* = {f}, R = {big_r}"),
                _ => println!("no plateau at delta = {}", r.delta),
            }
        }
        Command::Dims { k, n, regime, phi } => {
            let regime = match regime {
                RegimeArg::MaxKoenig => Regime::MaxKoenig,
                RegimeArg::MinStrong => Regime::MinStrong,
            };
            print!("{}", dims::report(k, n, regime, phi, cap)?);
        }
        Command::Reproduce { figure, out } => {
            reproduce::reproduce(figure, &out, cap)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("darwin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
