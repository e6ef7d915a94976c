//! Batch front end for the compositional-spline pipeline: ingest raw
//! measurements, smooth clr data per group, sample basis functions, and run
//! simplicial functional PCA.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "compospline",
    about = "Density smoothing with zero-integral splines and simplicial functional PCA",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one smoothing spline per group from a clr table.
    Smooth {
        /// Run configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Input clr table (`group_id,t,clr_value,weight`).
        #[arg(long)]
        input: PathBuf,
        /// Output directory for `splines.json` and `grid.csv`.
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Fit all groups and run simplicial functional PCA.
    Sfpca {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Output directory for `model.json`, `scores.csv`, `scree.csv`,
        /// and `perturbation.csv`.
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Sample the zero-integral, orthonormal, and compositional bases.
    Basis {
        #[arg(long)]
        config: PathBuf,
        /// Output directory for `basis.csv`.
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Bin raw values per group, impute empty classes, and emit a clr table.
    Ingest {
        /// Raw values table (`group_id,value`).
        #[arg(long)]
        raw: PathBuf,
        /// Histogram range as `lo:hi`, e.g. `40:110`.
        #[arg(long)]
        range: String,
        /// Output clr table path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Smooth {
            config,
            input,
            out_dir,
        } => commands::smooth::run(&RunConfig::load(&config)?, &input, &out_dir),
        Command::Sfpca {
            config,
            input,
            out_dir,
        } => commands::sfpca::run(&RunConfig::load(&config)?, &input, &out_dir),
        Command::Basis { config, out_dir } => {
            commands::basis::run(&RunConfig::load(&config)?, &out_dir)
        }
        Command::Ingest { raw, range, out } => {
            let range = commands::ingest::parse_range(&range)?;
            commands::ingest::run(&raw, range, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}
