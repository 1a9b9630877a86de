//! Plain-text point-set and coloring files.
//!
//! A point-set file has one point per line, `x y` or `x y color`, with
//! whitespace-separated decimal integers of any length. `#` starts a comment
//! that runs to the end of the line; blank lines are skipped. Point indices
//! follow file order. Either every point carries a color or none does.
//!
//! A standalone coloring file has `index color` lines with 0-based indices.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::chroma::Coloring;
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

/// Raw contents of a point-set file before any geometric validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub points: Vec<Point>,
    /// 1-based colors, present iff every line had a third column.
    pub colors: Option<Vec<u32>>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_int(field: &str, line: usize) -> Result<BigInt> {
    field.parse::<BigInt>().map_err(|_| Error::Parse {
        line,
        message: format!("`{field}` is not an integer"),
    })
}

fn parse_color(field: &str, line: usize) -> Result<u32> {
    match field.parse::<u32>() {
        Ok(c) if c >= 1 => Ok(c),
        _ => Err(Error::Parse {
            line,
            message: format!("`{field}` is not a positive color"),
        }),
    }
}

pub fn parse_points(text: &str) -> Result<PointFile> {
    let mut points = Vec::new();
    let mut colors = Vec::new();
    let mut colored: Option<bool> = None;
    for (line, fields) in data_lines(text) {
        let has_color = match fields.len() {
            2 => false,
            3 => true,
            k => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `x y` or `x y color`, found {k} fields"),
                })
            }
        };
        if *colored.get_or_insert(has_color) != has_color {
            return Err(Error::Parse {
                line,
                message: "mixes colored and uncolored points".into(),
            });
        }
        points.push(Point::new(parse_int(fields[0], line)?, parse_int(fields[1], line)?));
        if has_color {
            colors.push(parse_color(fields[2], line)?);
        }
    }
    Ok(PointFile {
        points,
        colors: (colored == Some(true)).then_some(colors),
    })
}

/// Parses and validates general position.
pub fn read_point_set(text: &str) -> Result<(PointSet, Option<Vec<u32>>)> {
    let file = parse_points(text)?;
    Ok((PointSet::new(file.points)?, file.colors))
}

pub fn write_points(set: &PointSet) -> String {
    let mut out = String::new();
    for p in set.points() {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn write_colored_points(set: &PointSet, coloring: &Coloring) -> Result<String> {
    coloring.check_len(set.len())?;
    let mut out = String::new();
    for (p, c) in set.points().iter().zip(coloring.colors()) {
        writeln!(out, "{} {} {}", p.x, p.y, c).unwrap();
    }
    Ok(out)
}

/// Parses `index color` lines into a color vector of length `n`.
pub fn parse_coloring(text: &str, n: usize) -> Result<Vec<u32>> {
    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (line, fields) in data_lines(text) {
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: "expected `index color`".into(),
            });
        }
        let index: usize = fields[0].parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{}` is not an index", fields[0]),
        })?;
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        if colors[index].replace(parse_color(fields[1], line)?).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("index {index} colored twice"),
            });
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("no color for index {i}"),
            })
        })
        .collect()
}

pub fn write_coloring(coloring: &Coloring) -> String {
    let mut out = String::new();
    for (i, c) in coloring.colors().iter().enumerate() {
        writeln!(out, "{i} {c}").unwrap();
    }
    out
}
