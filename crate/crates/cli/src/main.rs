//! `divgen` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 I/O.

mod error;
mod experiment;
mod generate;
mod input;
mod manifest;
mod opposite;
mod project;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use divgen::{DiverseCollection, Solution};
use serde::Serialize;

use error::{CliError, CliResult};
use manifest::{Manifest, RunContext};

#[derive(Debug, Parser)]
#[command(
    name = "divgen",
    version,
    about = "Diverse solution generators, opposite points and projections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a diverse collection from a seed.
    Generate(generate::GenerateArgs),
    /// Opposite points of bounded vectors.
    Opposite(opposite::OppositeArgs),
    /// Closest feasible point to an anchor.
    Project(project::ProjectArgs),
    /// Reproducible comparison experiments.
    Experiment(experiment::ExperimentArgs),
    /// Re-run a manifest and check that its outputs are reproduced.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Serializes a collection in the requested format.
pub fn render<T: Solution>(
    collection: &DiverseCollection<T>,
    format: Format,
) -> CliResult<Vec<u8>> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            divgen::io::write_csv(collection, &mut buf)?;
            buf
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(collection)?;
            text.push('\n');
            text.into_bytes()
        }
    })
}

fn run(command: Command, ctx: &mut RunContext) -> CliResult<()> {
    match command {
        Command::Generate(args) => generate::run(args, ctx),
        Command::Opposite(args) => opposite::run(args, ctx),
        Command::Project(args) => project::run(args, ctx),
        Command::Experiment(args) => experiment::run(args, ctx),
        Command::Replay { .. } => Err(CliError::usage("a manifest cannot replay another replay")),
    }
}

fn replay(path: &Path) -> CliResult<()> {
    let recorded = Manifest::read(path)?;
    for input in &recorded.inputs {
        let bytes = std::fs::read(&input.path).map_err(|e| CliError::io(&input.path, e))?;
        if manifest::sha256_hex(&bytes) != input.sha256 {
            return Err(CliError::invalid(format!(
                "input {} changed since the recorded run",
                input.path.display()
            )));
        }
    }
    let argv = std::iter::once("divgen".to_string()).chain(recorded.argv.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::usage(e.to_string()))?;
    let mut ctx = RunContext::new(recorded.argv.clone(), recorded.rng_seed);
    run(cli.command, &mut ctx)?;
    let fresh = ctx.finish()?;
    if fresh.outputs != recorded.outputs {
        return Err(CliError::invalid(format!(
            "replay of {} produced different outputs",
            path.display()
        )));
    }
    eprintln!("replay ok: {} output(s) reproduced", fresh.outputs.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Replay { manifest } => replay(&manifest),
        command => {
            let mut ctx = RunContext::new(std::env::args().skip(1).collect(), None);
            run(command, &mut ctx).and_then(|()| ctx.finish().map(drop))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("divgen: {e}");
            ExitCode::from(e.code())
        }
    }
}
