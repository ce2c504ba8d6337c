//! Seeded comparison runs. Trial `k` uses seed `base ⊕ k`, so any trial can
//! be rerun on its own.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use divgen::diversity::{report, DiversityReport, Metric};
use divgen::genbin::{first_generator, sequential_generator, FirstGenParams};
use divgen::opposition::{dbl_opposite, obl_opposite, MidpointTie};
use divgen::{BinaryVector, BoundedInterval, DiverseCollection, Provenance, RngSeed};
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::manifest::RunContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Diversity of uniform random, first and sequential collections.
    Divbench,
    /// |opposite − x| for reflection and contracted opposites over a sweep.
    Degeneracy,
}

#[derive(Debug, Args, Serialize)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Dimension (`divbench`) or number of sweep steps (`degeneracy`).
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    /// Random-uniform collection size; defaults to the sequential size.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    pub lambda_l: f64,
    #[arg(long, default_value_t = 0.2)]
    pub lambda_u: f64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

fn report_row(out: &mut String, trial: u64, seed: u64, generator: &str, r: &DiversityReport) {
    let _ = writeln!(
        out,
        "{trial},{seed},{generator},{}",
        r.csv_fields().join(",")
    );
}

fn divbench(args: &ExperimentArgs, base: u64) -> CliResult<String> {
    let n = args.n;
    if n < 2 {
        return Err(CliError::usage("divbench needs --n >= 2"));
    }
    let mut out = format!(
        "trial,trial_seed,generator,{}\n",
        DiversityReport::CSV_HEADER.join(",")
    );
    let metric = Metric::Hamming;
    for k in 0..args.trials {
        let seed_k = RngSeed(base).derive(k);
        let mut rng = seed_k.rng();
        let mut draw = || BinaryVector::new((0..n).map(|_| rng.gen_range(0..=1)).collect());
        let x = draw()?;
        let sequential = sequential_generator(&x);
        let samples = args.samples.unwrap_or(sequential.len());
        let uniform: Vec<BinaryVector> = (0..samples)
            .map(|_| draw())
            .collect::<divgen::Result<_>>()?;
        let uniform = DiverseCollection::new(uniform, Provenance::new("random-uniform", samples))?;
        let first = first_generator(&x, &FirstGenParams::recommended(n))?;
        for (name, c) in [
            ("random-uniform", &uniform),
            ("first", &first),
            ("sequential", &sequential),
        ] {
            report_row(&mut out, k, seed_k.0, name, &report(c, &x, &metric)?);
        }
    }
    Ok(out)
}

fn degeneracy(args: &ExperimentArgs, base: u64) -> CliResult<String> {
    if args.n < 1 {
        return Err(CliError::usage("degeneracy needs --n >= 1"));
    }
    let mut out =
        String::from("trial,trial_seed,lower,upper,lambda_l,lambda_u,x,obl_gap,dbl_gap\n");
    for k in 0..args.trials {
        let seed_k = RngSeed(base).derive(k);
        let mut rng = seed_k.rng();
        let lower: f64 = rng.gen_range(-10.0..10.0);
        let upper = lower + rng.gen_range(0.1..20.0);
        let iv = BoundedInterval::with_lambdas(lower, upper, args.lambda_l, args.lambda_u)?;
        for i in 0..=args.n {
            // hit the midpoint exactly when the sweep passes through it
            let x = if 2 * i == args.n {
                (lower + upper) / 2.0
            } else {
                lower + (upper - lower) * i as f64 / args.n as f64
            };
            let obl = (obl_opposite(x, &iv)? - x).abs();
            let dbl = (dbl_opposite(x, &iv, false, MidpointTie::Upper)? - x).abs();
            let _ = writeln!(
                out,
                "{k},{},{lower},{upper},{},{},{x},{obl},{dbl}",
                seed_k.0, args.lambda_l, args.lambda_u
            );
        }
    }
    Ok(out)
}

pub fn run(args: ExperimentArgs, ctx: &mut RunContext) -> CliResult<()> {
    let base = ctx.seed(args.rng_seed)?;
    let (name, table) = match args.experiment {
        Experiment::Divbench => ("divbench.csv", divbench(&args, base)?),
        Experiment::Degeneracy => ("degeneracy.csv", degeneracy(&args, base)?),
    };
    ctx.write(Some(&args.out.join(name)), table.as_bytes())?;
    ctx.describe("experiment", &args);
    Ok(())
}
