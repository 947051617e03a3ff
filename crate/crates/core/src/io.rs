//! Text format for solution sets.
//!
//! ```text
//! coords: quad
//! tets: 2
//! 1 0 0 1 0 0
//! ```
//!
//! One ray per line, entries separated by spaces, in canonical order. Blank
//! lines and lines starting with `%` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::coords::{Coords, SolutionSet};
use crate::error::{Error, Result};
use crate::int::IntVec;

pub fn write_solution_set(set: &SolutionSet) -> String {
    let mut out = format!("coords: {}\ntets: {}\n", set.coords(), set.tets());
    for r in set.rays() {
        let _ = writeln!(out, "{r}");
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn column_of(raw: &str, token: &str) -> usize {
    token.as_ptr() as usize - raw.as_ptr() as usize + 1
}

pub fn parse_solution_set(text: &str) -> Result<SolutionSet> {
    let mut coords: Option<Coords> = None;
    let mut tets: Option<usize> = None;
    let mut rays = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut toks = raw.split_whitespace();
        let first = toks.next().expect("non-empty line");
        match first {
            "coords:" | "tets:" => {
                let value = toks.next().ok_or_else(|| syntax(line, raw.len() + 1, format!("missing value after `{first}`")))?;
                if let Some(extra) = toks.next() {
                    return Err(syntax(line, column_of(raw, extra), format!("unexpected trailing `{extra}`")));
                }
                let col = column_of(raw, value);
                if first == "coords:" {
                    if coords.is_some() {
                        return Err(syntax(line, column_of(raw, first), "duplicate `coords:` header"));
                    }
                    coords = Some(match value {
                        "std" => Coords::Standard,
                        "quad" => Coords::Quad,
                        other => return Err(syntax(line, col, format!("unknown coordinate system `{other}`"))),
                    });
                } else {
                    if tets.is_some() {
                        return Err(syntax(line, column_of(raw, first), "duplicate `tets:` header"));
                    }
                    tets = Some(value.parse().map_err(|_| syntax(line, col, format!("bad tetrahedron count `{value}`")))?);
                }
            }
            _ => {
                let (Some(c), Some(n)) = (coords, tets) else {
                    return Err(syntax(line, 1, "ray before the `coords:` and `tets:` headers"));
                };
                let entries = raw
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<BigInt>()
                            .map_err(|_| syntax(line, column_of(raw, tok), format!("expected an integer, found `{tok}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != c.dim(n) {
                    return Err(Error::DimensionMismatch { expected: c.dim(n), found: entries.len() });
                }
                rays.push(IntVec::from_big(entries));
            }
        }
    }
    match (coords, tets) {
        (Some(c), Some(n)) => Ok(SolutionSet::new(c, n, rays)),
        _ => Err(syntax(1, 1, "missing `coords:` or `tets:` header")),
    }
}
