use std::path::PathBuf;

use clap::{Args, ValueEnum};
use divgen::opposition::{
    dbl_opposite_vector, maxmin_opposite, obl_opposite, LambdaPolicy, Sentinels, TiePolicy,
};
use divgen::{BoundedVector, DiverseCollection, Provenance};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input;
use crate::manifest::RunContext;
use crate::{render, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Reflection `L + U − x`.
    Obl,
    /// Farthest contracted bound.
    Dbl,
    /// Point maximizing the minimum distance to a collection.
    Maxmin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tie {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SentinelArg {
    Bounds,
    Contracted,
}

#[derive(Debug, Args, Serialize)]
pub struct OppositeArgs {
    #[arg(value_enum)]
    pub mode: Mode,
    /// CSV of points, one opposite per row (`obl`, `dbl`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// CSV `lower,upper[,integral]`, one row per component.
    #[arg(long)]
    pub bounds: PathBuf,
    #[arg(long, default_value_t = divgen::opposition::DEFAULT_LAMBDA_LOWER)]
    pub lambda_l: f64,
    #[arg(long, default_value_t = divgen::opposition::DEFAULT_LAMBDA_UPPER)]
    pub lambda_u: f64,
    /// Side chosen at the contracted midpoint (`dbl`).
    #[arg(long, value_enum, default_value_t = Tie::Upper)]
    pub tie: Tie,
    /// CSV of collection members (`maxmin`).
    #[arg(long)]
    pub collection: Option<PathBuf>,
    /// End points of the gap scan (`maxmin`).
    #[arg(long, value_enum, default_value_t = SentinelArg::Bounds)]
    pub sentinels: SentinelArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: OppositeArgs, ctx: &mut RunContext) -> CliResult<()> {
    let (bounds, integral) = input::bounds(ctx, &args.bounds)?;
    let lambda = LambdaPolicy::Fixed {
        lower: args.lambda_l,
        upper: args.lambda_u,
    };
    let members = match args.mode {
        Mode::Obl | Mode::Dbl => {
            let path = args.input.as_ref().ok_or_else(|| {
                CliError::usage(format!("opposite {:?} needs --input", args.mode))
            })?;
            let points = input::bounded_rows(ctx, path, &bounds, &integral)?;
            points
                .iter()
                .map(|x| match args.mode {
                    Mode::Obl => {
                        let values = x
                            .values()
                            .iter()
                            .zip(x.intervals())
                            .map(|(&v, iv)| obl_opposite(v, iv))
                            .collect::<divgen::Result<Vec<f64>>>()?;
                        x.with_values(values)
                    }
                    _ => {
                        let tie = match args.tie {
                            Tie::Upper => TiePolicy::Upper,
                            Tie::Lower => TiePolicy::Lower,
                        };
                        dbl_opposite_vector(x, &lambda, tie)
                    }
                })
                .collect::<divgen::Result<Vec<BoundedVector>>>()?
        }
        Mode::Maxmin => {
            let path = args
                .collection
                .as_ref()
                .ok_or_else(|| CliError::usage("opposite maxmin needs --collection"))?;
            let members = input::bounded_rows(ctx, path, &bounds, &integral)?;
            let contracted = lambda.apply(&bounds)?;
            let sentinels = match args.sentinels {
                SentinelArg::Bounds => Sentinels::Bounds,
                SentinelArg::Contracted => Sentinels::Contracted,
            };
            vec![maxmin_opposite(&members, &contracted, sentinels)?]
        }
    };
    let name = format!("{:?}", args.mode).to_lowercase();
    let collection = DiverseCollection::new(members, Provenance::new(name, &args))?;
    ctx.write(args.out.as_deref(), &render(&collection, args.format)?)?;
    ctx.describe("opposite", &args);
    Ok(())
}
