//! CSV row format for collections.
//!
//! One solution per row with header `index,x_1,...,x_n`; `index` is the
//! 1-based member number. Readers also accept header-less rows of bare
//! components. Reals are written with the shortest representation that
//! parses back to the same `f64`.

use std::io::{Read, Write};

use crate::collection::DiverseCollection;
use crate::types::{BinaryVector, BoundedInterval, Permutation, Solution};
use crate::{Error, Result};

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => Error::Parse {
            line,
            column: len.min(expected_len) as usize + 1,
            message: format!("row has {len} fields, expected {expected_len}"),
        },
        other => Error::Parse {
            line,
            column: 1,
            message: format!("{other:?}"),
        },
    }
}

pub fn write_csv<T: Solution, W: Write>(collection: &DiverseCollection<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let n = collection.dim().unwrap_or(0);
    let mut header = Vec::with_capacity(n + 1);
    header.push("index".to_string());
    header.extend((1..=n).map(|j| format!("x_{j}")));
    w.write_record(&header).map_err(csv_err)?;
    for (i, member) in collection.iter().enumerate() {
        let mut row = Vec::with_capacity(n + 1);
        row.push((i + 1).to_string());
        row.extend(member.fields());
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string<T: Solution>(collection: &DiverseCollection<T>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(collection, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Rows of real components. Blank lines and `#` comments are skipped.
pub fn read_rows<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    let mut indexed = false;
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if r == 0 && record.get(0) == Some("index") {
            indexed = true;
            continue;
        }
        let skip = usize::from(indexed);
        let mut row = Vec::with_capacity(record.len().saturating_sub(skip));
        for (c, field) in record.iter().enumerate().skip(skip) {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                column: c + 1,
                message: format!("`{field}` is not a number"),
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    read_rows(text.as_bytes())
}

/// Per-component bounds, one `lower,upper[,integral]` row per component.
/// An optional header row starting with `lower` is skipped; `integral` is
/// 0 or 1 and defaults to 0.
pub fn read_bounds<R: Read>(input: R) -> Result<(Vec<BoundedInterval>, Vec<bool>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut intervals = Vec::new();
    let mut integral = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if r == 0 && record.get(0) == Some("lower") {
            continue;
        }
        if !(2..=3).contains(&record.len()) {
            return Err(Error::Parse {
                line,
                column: record.len().min(3) + 1,
                message: format!(
                    "expected lower,upper[,integral], got {} fields",
                    record.len()
                ),
            });
        }
        let mut nums = [0.0; 3];
        for (c, field) in record.iter().enumerate() {
            nums[c] = field.parse().map_err(|_| Error::Parse {
                line,
                column: c + 1,
                message: format!("`{field}` is not a number"),
            })?;
        }
        let iv = BoundedInterval::new(nums[0], nums[1]).map_err(|e| Error::Parse {
            line,
            column: 1,
            message: e.to_string(),
        })?;
        let int = match nums[2] {
            0.0 => false,
            1.0 => true,
            other => {
                return Err(Error::Parse {
                    line,
                    column: 3,
                    message: format!("integral flag must be 0 or 1, got {other}"),
                })
            }
        };
        intervals.push(iv);
        integral.push(int);
    }
    Ok((intervals, integral))
}

fn whole(x: f64) -> Option<u64> {
    (x.fract() == 0.0 && x >= 0.0 && x <= u64::MAX as f64).then_some(x as u64)
}

pub fn binary_rows(rows: Vec<Vec<f64>>) -> Result<Vec<BinaryVector>> {
    rows.into_iter()
        .map(|row| {
            let bits = row
                .iter()
                .map(|&x| match whole(x) {
                    Some(b @ (0 | 1)) => Ok(b as u8),
                    _ => Err(Error::Parameter(format!("{x} is not a 0/1 value"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            BinaryVector::new(bits)
        })
        .collect()
}

pub fn permutation_rows(rows: Vec<Vec<f64>>) -> Result<Vec<Permutation>> {
    rows.into_iter()
        .map(|row| {
            let order = row
                .iter()
                .map(|&x| {
                    whole(x)
                        .map(|v| v as usize)
                        .ok_or_else(|| Error::Parameter(format!("{x} is not a label")))
                })
                .collect::<Result<Vec<usize>>>()?;
            Permutation::new(order)
        })
        .collect()
}
