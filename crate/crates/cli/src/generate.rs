use std::path::PathBuf;

use clap::{Args, ValueEnum};
use divgen::genbin::{
    first_generator, first_generator_1a, sequential_generator, FirstGenParams, FirstGenVariant,
};
use divgen::genperm::{generate_perm, PermGenParams};
use divgen::lift::{binarize_seed, lift_collection, LiftPolicy, LiftRule};
use divgen::opposition::LambdaPolicy;
use divgen::{BinaryVector, BoundedVector, DiverseCollection, Permutation, RngSeed};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input;
use crate::manifest::RunContext;
use crate::{render, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    First,
    First1a,
    Sequential,
    Perm,
    Lift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    Zeros,
    Ones,
    Identity,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryGenerator {
    First,
    First1a,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    R1,
    R2,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub generator: Generator,
    /// CSV file whose first row is the seed.
    #[arg(long, conflicts_with_all = ["n", "seed"])]
    pub seed_file: Option<PathBuf>,
    /// Dimension of a built-in seed.
    #[arg(long)]
    pub n: Option<usize>,
    /// Built-in seed; `zeros` for binary generators and `identity` for
    /// permutations by default.
    #[arg(long, value_enum)]
    pub seed: Option<SeedKind>,
    /// Largest spacing h*; defaults to max(1, n/5).
    #[arg(long)]
    pub h_max: Option<usize>,
    #[arg(long)]
    pub max_solutions: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub h_stride: usize,
    #[arg(long, default_value_t = 1)]
    pub q_stride: usize,
    /// Follow the basic pass of `first` with the paired-flip pass.
    #[arg(long)]
    pub augment: bool,
    /// Spacing for `perm` (repeatable). Without any, h = 1..=n/2 with
    /// reversals.
    #[arg(long = "h")]
    pub h_values: Vec<usize>,
    /// Also emit the reversal of every `perm` output.
    #[arg(long)]
    pub reversals: bool,
    /// Only the two spacings nearest √n, with reversals.
    #[arg(long, conflicts_with = "h_values")]
    pub sqrt_only: bool,
    /// Per-component bounds for `lift` (CSV `lower,upper[,integral]`).
    #[arg(long)]
    pub bounds: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Rule::R1)]
    pub rule: Rule,
    #[arg(long, default_value_t = divgen::opposition::DEFAULT_LAMBDA_LOWER)]
    pub lambda_l: f64,
    #[arg(long, default_value_t = divgen::opposition::DEFAULT_LAMBDA_UPPER)]
    pub lambda_u: f64,
    /// Draw λ_L and λ_U per component uniformly from [A, B].
    #[arg(long, value_parser = input::parse_pair, conflicts_with_all = ["lambda_l", "lambda_u"])]
    pub lambda_interval: Option<(f64, f64)>,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub midpoint_bit: u8,
    /// Binary generator that `lift` diversifies the binary seed with.
    #[arg(long, value_enum, default_value_t = BinaryGenerator::Sequential)]
    pub binary: BinaryGenerator,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GenerateArgs {
    fn first_params(&self, n: usize, variant: FirstGenVariant) -> FirstGenParams {
        let mut p = match self.h_max {
            Some(h) => FirstGenParams::new(h),
            None => FirstGenParams::recommended(n),
        }
        .with_strides(self.h_stride, self.q_stride)
        .with_variant(variant);
        if let Some(m) = self.max_solutions {
            p = p.with_max_solutions(m);
        }
        p
    }

    fn dimension(&self) -> CliResult<usize> {
        match self.n {
            Some(0) => Err(CliError::usage("--n must be at least 1")),
            Some(n) => Ok(n),
            None => Err(CliError::usage("give --seed-file or --n")),
        }
    }
}

fn binary_seed(args: &GenerateArgs, ctx: &mut RunContext) -> CliResult<BinaryVector> {
    if let Some(path) = &args.seed_file {
        return input::binary_seed(ctx, path);
    }
    let n = args.dimension()?;
    Ok(match args.seed.unwrap_or(SeedKind::Zeros) {
        SeedKind::Zeros => BinaryVector::zeros(n)?,
        SeedKind::Ones => BinaryVector::ones(n)?,
        SeedKind::Random => {
            let mut rng = RngSeed(ctx.seed(args.rng_seed)?).rng();
            BinaryVector::new((0..n).map(|_| rng.gen_range(0..=1)).collect())?
        }
        SeedKind::Identity => return Err(CliError::usage("--seed identity is for permutations")),
    })
}

fn permutation_seed(args: &GenerateArgs, ctx: &mut RunContext) -> CliResult<Permutation> {
    if let Some(path) = &args.seed_file {
        return input::permutation_seed(ctx, path);
    }
    let n = args.dimension()?;
    let mut p = Permutation::identity(n)?;
    match args.seed.unwrap_or(SeedKind::Identity) {
        SeedKind::Identity => {}
        SeedKind::Random => {
            let mut order = p.order().to_vec();
            order.shuffle(&mut RngSeed(ctx.seed(args.rng_seed)?).rng());
            p = Permutation::new(order)?;
        }
        other => {
            return Err(CliError::usage(format!(
                "--seed {other:?} is not a permutation; use identity or random"
            )))
        }
    }
    Ok(p)
}

fn binary_collection(
    args: &GenerateArgs,
    which: BinaryGenerator,
    seed: &BinaryVector,
) -> CliResult<DiverseCollection<BinaryVector>> {
    let n = seed.len();
    Ok(match which {
        BinaryGenerator::First => {
            let variant = if args.augment {
                FirstGenVariant::Augmented1A
            } else {
                FirstGenVariant::Basic
            };
            first_generator(seed, &args.first_params(n, variant))?
        }
        BinaryGenerator::First1a => {
            first_generator_1a(seed, &args.first_params(n, FirstGenVariant::Augmented1A))?
        }
        BinaryGenerator::Sequential => sequential_generator(seed),
    })
}

fn lift(args: &GenerateArgs, ctx: &mut RunContext) -> CliResult<DiverseCollection<BoundedVector>> {
    let bounds = args
        .bounds
        .as_ref()
        .ok_or_else(|| CliError::usage("generate lift needs --bounds"))?;
    let (intervals, integral) = input::bounds(ctx, bounds)?;
    let x_s = match (&args.seed_file, args.seed) {
        (Some(path), _) => {
            let mut rows = input::bounded_rows(ctx, path, &intervals, &integral)?;
            if rows.is_empty() {
                return Err(CliError::invalid("no seed row").in_file(path));
            }
            rows.swap_remove(0)
        }
        (None, Some(SeedKind::Random)) => {
            let mut rng = RngSeed(ctx.seed(args.rng_seed)?).derive(1).rng();
            let values = intervals
                .iter()
                .zip(&integral)
                .map(|(iv, &int)| {
                    if int {
                        rng.gen_range(iv.lower().ceil()..=iv.upper().floor())
                    } else {
                        rng.gen_range(iv.lower()..=iv.upper())
                    }
                })
                .collect();
            BoundedVector::new(values, intervals.clone(), integral.clone())?
        }
        _ => {
            return Err(CliError::usage(
                "generate lift needs --seed-file or --seed random",
            ))
        }
    };
    let lambda = match args.lambda_interval {
        Some(range) => LambdaPolicy::random(range, RngSeed(ctx.seed(args.rng_seed)?)),
        None => LambdaPolicy::Fixed {
            lower: args.lambda_l,
            upper: args.lambda_u,
        },
    };
    let rule = match args.rule {
        Rule::R1 => LiftRule::R1,
        Rule::R2 => LiftRule::R2,
    };
    let policy = LiftPolicy::new(rule, lambda).with_midpoint_bit(args.midpoint_bit);
    let y_s = binarize_seed(&x_s, &policy)?;
    let binary = binary_collection(args, args.binary, &y_s)?;
    Ok(lift_collection(&x_s, &binary, &policy)?)
}

pub fn run(args: GenerateArgs, ctx: &mut RunContext) -> CliResult<()> {
    let bytes = match args.generator {
        Generator::First | Generator::First1a | Generator::Sequential => {
            let seed = binary_seed(&args, ctx)?;
            let which = match args.generator {
                Generator::First => BinaryGenerator::First,
                Generator::First1a => BinaryGenerator::First1a,
                _ => BinaryGenerator::Sequential,
            };
            render(&binary_collection(&args, which, &seed)?, args.format)?
        }
        Generator::Perm => {
            let seed = permutation_seed(&args, ctx)?;
            let n = seed.len();
            let params = if args.sqrt_only {
                PermGenParams::sqrt_only(n)
            } else if args.h_values.is_empty() {
                PermGenParams::default_for(n)
            } else {
                PermGenParams::new(args.h_values.iter().copied(), args.reversals)
            };
            render(&generate_perm(&seed, &params)?, args.format)?
        }
        Generator::Lift => render(&lift(&args, ctx)?, args.format)?,
    };
    ctx.write(args.out.as_deref(), &bytes)?;
    ctx.describe("generate", &args);
    Ok(())
}
