use std::path::PathBuf;

use clap::{Args, ValueEnum};
use divgen::project::{
    build_coefficients, evaluate_proximity, project_binary, project_box, CoefficientMode,
    ConstraintKind, ConstraintSystem, FrequencyMemory, ProximityObjective,
};
use divgen::{BinaryVector, RngSeed};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input;
use crate::manifest::RunContext;
use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefMode {
    /// `f_j = ±1`.
    Unit,
    /// Coefficients scaled by recorded value frequencies.
    Frequency,
}

#[derive(Debug, Args, Serialize)]
pub struct ProjectArgs {
    /// JSON constraint system.
    #[arg(long)]
    pub constraints: PathBuf,
    /// Anchor point: inline `a,b,c` or a CSV file whose first row is used.
    #[arg(long)]
    pub anchor: String,
    #[arg(long, value_enum, default_value_t = CoefMode::Unit)]
    pub mode: CoefMode,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// JSON frequency memory `{"counts": [...], "total": T}`.
    #[arg(long)]
    pub freq: Option<PathBuf>,
    /// Multiply frequency coefficients by a seeded random factor.
    #[arg(long)]
    pub jitter: bool,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    /// 1-based components that are integer-valued (box constraints).
    #[arg(long, value_delimiter = ',')]
    pub integral: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Projection<'a> {
    kind: ConstraintKind,
    solution: Vec<f64>,
    objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    proximity: Option<&'a ProximityObjective>,
}

fn anchor(args: &ProjectArgs, ctx: &mut RunContext) -> CliResult<Vec<f64>> {
    if let Some(v) = input::parse_inline(&args.anchor) {
        return Ok(v);
    }
    let path = PathBuf::from(&args.anchor);
    input::rows(ctx, &path)?
        .into_iter()
        .next()
        .ok_or_else(|| CliError::invalid("no anchor row").in_file(&path))
}

fn render(p: &Projection<'_>, format: Format) -> CliResult<Vec<u8>> {
    Ok(match format {
        Format::Csv => {
            let n = p.solution.len();
            let mut text = String::from("index");
            for j in 1..=n {
                text.push_str(&format!(",x_{j}"));
            }
            text.push_str(",objective\n1");
            for v in &p.solution {
                text.push_str(&format!(",{v}"));
            }
            text.push_str(&format!(",{}\n", p.objective));
            text.into_bytes()
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(p)?;
            text.push('\n');
            text.into_bytes()
        }
    })
}

pub fn run(args: ProjectArgs, ctx: &mut RunContext) -> CliResult<()> {
    let text = ctx.read_text(&args.constraints)?;
    let cs: ConstraintSystem =
        serde_json::from_str(&text).map_err(|e| CliError::from(e).in_file(&args.constraints))?;
    cs.validate()
        .map_err(|e| CliError::from(e).in_file(&args.constraints))?;
    let x0 = anchor(&args, ctx)?;

    let bytes = if cs.kind == ConstraintKind::Box {
        let bounds = cs.bounds.as_deref().unwrap_or_default();
        let mut integral = vec![false; bounds.len()];
        for &j in &args.integral {
            *integral.get_mut(j.wrapping_sub(1)).ok_or_else(|| {
                CliError::usage(format!("--integral {j} outside 1..={}", bounds.len()))
            })? = true;
        }
        let y = project_box(&x0, bounds, &integral)?;
        let objective = evaluate_proximity(&ProximityObjective::unit_l1(x0)?, y.values())?;
        let p = Projection {
            kind: cs.kind,
            solution: y.values().to_vec(),
            objective,
            proximity: None,
        };
        render(&p, args.format)?
    } else {
        let bits = divgen::io::binary_rows(vec![x0])?.remove(0);
        let obj = objective(&args, ctx, &bits)?;
        let y = project_binary(&obj, &cs)?;
        let solution: Vec<f64> = y.bits().iter().map(|&b| f64::from(b)).collect();
        let objective = evaluate_proximity(&obj, &solution)?;
        let p = Projection {
            kind: cs.kind,
            solution,
            objective,
            proximity: Some(&obj),
        };
        render(&p, args.format)?
    };
    ctx.write(args.out.as_deref(), &bytes)?;
    ctx.describe("project", &args);
    Ok(())
}

fn objective(
    args: &ProjectArgs,
    ctx: &mut RunContext,
    x0: &BinaryVector,
) -> CliResult<ProximityObjective> {
    Ok(match args.mode {
        CoefMode::Unit => build_coefficients(x0, CoefficientMode::Unit, None)?,
        CoefMode::Frequency => {
            let path = args
                .freq
                .as_ref()
                .ok_or_else(|| CliError::usage("--mode frequency needs --freq"))?;
            let text = ctx.read_text(path)?;
            let memory: FrequencyMemory =
                serde_json::from_str(&text).map_err(|e| CliError::from(e).in_file(path))?;
            let seed = if args.jitter {
                Some(RngSeed(ctx.seed(args.rng_seed)?))
            } else {
                None
            };
            build_coefficients(
                x0,
                CoefficientMode::Frequency {
                    memory: &memory,
                    beta: args.beta,
                },
                seed,
            )?
        }
    })
}
