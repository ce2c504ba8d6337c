//! Reading seeds, bounds and collections from files.

use std::path::Path;

use divgen::io::{binary_rows, permutation_rows, read_bounds, read_rows};
use divgen::{BinaryVector, BoundedInterval, BoundedVector, Permutation};

use crate::error::{CliError, CliResult};
use crate::manifest::RunContext;

pub fn rows(ctx: &mut RunContext, path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let bytes = ctx.read(path)?;
    read_rows(&bytes[..]).map_err(|e| CliError::from(e).in_file(path))
}

fn first_row(ctx: &mut RunContext, path: &Path) -> CliResult<Vec<f64>> {
    rows(ctx, path)?
        .into_iter()
        .next()
        .ok_or_else(|| CliError::invalid("no solution rows").in_file(path))
}

pub fn binary_seed(ctx: &mut RunContext, path: &Path) -> CliResult<BinaryVector> {
    let row = first_row(ctx, path)?;
    let mut v = binary_rows(vec![row]).map_err(|e| CliError::from(e).in_file(path))?;
    Ok(v.remove(0))
}

pub fn permutation_seed(ctx: &mut RunContext, path: &Path) -> CliResult<Permutation> {
    let row = first_row(ctx, path)?;
    let mut v = permutation_rows(vec![row]).map_err(|e| CliError::from(e).in_file(path))?;
    Ok(v.remove(0))
}

pub fn bounds(ctx: &mut RunContext, path: &Path) -> CliResult<(Vec<BoundedInterval>, Vec<bool>)> {
    let bytes = ctx.read(path)?;
    let (ivs, ints) = read_bounds(&bytes[..]).map_err(|e| CliError::from(e).in_file(path))?;
    if ivs.is_empty() {
        return Err(CliError::invalid("no bounds rows").in_file(path));
    }
    Ok((ivs, ints))
}

/// Every row of `path` as a bounded vector over the given bounds.
pub fn bounded_rows(
    ctx: &mut RunContext,
    path: &Path,
    intervals: &[BoundedInterval],
    integral: &[bool],
) -> CliResult<Vec<BoundedVector>> {
    rows(ctx, path)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            BoundedVector::new(row, intervals.to_vec(), integral.to_vec())
                .map_err(|e| CliError::invalid(format!("row {}: {e}", i + 1)).in_file(path))
        })
        .collect()
}

/// `A,B` pair of reals.
pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected A,B, got `{s}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{t}` is not a number"))
    };
    Ok((parse(a)?, parse(b)?))
}

/// Comma-separated reals, or `None` if `s` is not such a list.
pub fn parse_inline(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}
