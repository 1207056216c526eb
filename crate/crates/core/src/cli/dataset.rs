//! Delimited-text datasets and query files.
//!
//! Every file starts with a header row. Columns are positional: `d` columns of
//! `x`, then `s` columns of `v` (missing-data files only), then `y` (datasets
//! only), then an optional `delta`. A `v` entry is missing when it is `NA` or
//! empty; a row's `v` block is either fully present or fully missing. When a
//! `delta` column is present it must be 1 exactly when `v` is present.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::classify::{Label, LabeledSample};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::missing::{Layout, MissingSample};

/// Parsed data rows, each with its 1-based line number in the file.
#[derive(Clone, Debug, PartialEq)]
pub struct Rows<T> {
    pub rows: Vec<(usize, T)>,
}

impl<T> Rows<T> {
    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.rows.iter().map(|(_, t)| t)
    }

    pub fn into_values(self) -> Vec<T> {
        self.rows.into_iter().map(|(_, t)| t).collect()
    }
}

struct Reader {
    path: PathBuf,
    header: Vec<String>,
    records: Vec<(usize, Vec<String>)>,
}

fn row_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Row {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Splits a comma-separated table by hand rather than through a CSV parser so
/// that reported line numbers stay exact across blank lines. Fields are plain
/// numeric tokens, so no quoting is needed.
fn read_table<R: Read>(path: &Path, mut input: R) -> Result<Reader> {
    let mut text = String::new();
    input.read_to_string(&mut text).map_err(|e| Error::io(path, e))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let split = |l: &str| l.split(',').map(|f| f.trim().to_string()).collect::<Vec<_>>();
    let header = match lines.next() {
        Some((_, l)) => split(l),
        None => return Err(row_err(path, 1, "missing header row")),
    };
    let records = lines.map(|(n, l)| (n, split(l))).collect();
    Ok(Reader {
        path: path.to_path_buf(),
        header,
        records,
    })
}

impl Reader {
    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        row_err(&self.path, line, message)
    }

    fn number(&self, line: usize, column: usize, field: &str) -> Result<f64> {
        let v: f64 = field
            .parse()
            .map_err(|_| self.err(line, format!("column {}: cannot parse `{field}` as a number", column + 1)))?;
        if !v.is_finite() {
            return Err(self.err(line, format!("column {}: value must be finite", column + 1)));
        }
        Ok(v)
    }

    fn point(&self, line: usize, fields: &[String], offset: usize) -> Result<Point> {
        let coords = fields
            .iter()
            .enumerate()
            .map(|(i, f)| self.number(line, offset + i, f))
            .collect::<Result<Vec<_>>>()?;
        Point::new(coords).map_err(|e| self.err(line, e.to_string()))
    }

    fn label(&self, line: usize, field: &str) -> Result<Label> {
        match field {
            "0" => Ok(Label::Zero),
            "1" => Ok(Label::One),
            other => Err(self.err(line, format!("label must be 0 or 1, got `{other}`"))),
        }
    }

    fn check_width(&self, line: usize, got: usize, allowed: &[usize]) -> Result<()> {
        if allowed.contains(&got) {
            return Ok(());
        }
        let want = allowed.iter().map(usize::to_string).collect::<Vec<_>>().join(" or ");
        Err(self.err(line, format!("expected {want} columns, found {got}")))
    }

    /// Optional `v` block; all entries present, or all `NA`/empty.
    fn optional_block(&self, line: usize, fields: &[String], offset: usize) -> Result<Option<Point>> {
        let missing = fields.iter().filter(|f| is_missing(f)).count();
        match missing {
            0 => self.point(line, fields, offset).map(Some),
            m if m == fields.len() => Ok(None),
            _ => Err(self.err(line, "v block is partially missing")),
        }
    }

    fn delta(&self, line: usize, field: &str, v: &Option<Point>) -> Result<()> {
        let delta = match field {
            "0" => false,
            "1" => true,
            other => return Err(self.err(line, format!("delta must be 0 or 1, got `{other}`"))),
        };
        if delta != v.is_some() {
            let msg = if delta {
                "delta = 1 but v is missing"
            } else {
                "delta = 0 but v is present"
            };
            return Err(self.err(line, msg));
        }
        Ok(())
    }
}

fn is_missing(field: &str) -> bool {
    field.is_empty() || field == "NA"
}

fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|e| Error::io(path, e))
}

/// Labelled complete data `x1..xd, y`. `d` defaults to the column count minus one.
pub fn parse_complete<R: Read>(path: &Path, input: R, d: Option<usize>) -> Result<Rows<LabeledSample>> {
    let t = read_table(path, input)?;
    let d = d.unwrap_or(t.header.len().saturating_sub(1));
    if d == 0 {
        return Err(t.err(1, "need at least one covariate column before y"));
    }
    let rows = t
        .records
        .iter()
        .map(|(line, f)| {
            t.check_width(*line, f.len(), &[d + 1])?;
            let x = t.point(*line, &f[..d], 0)?;
            Ok((*line, LabeledSample { x, y: t.label(*line, &f[d])? }))
        })
        .collect::<Result<_>>()?;
    Ok(Rows { rows })
}

/// Labelled data `x1..xd, v1..vs, y[, delta]`.
pub fn parse_missing<R: Read>(path: &Path, input: R, layout: Layout) -> Result<Rows<MissingSample>> {
    let t = read_table(path, input)?;
    let (d, s) = (layout.d, layout.s);
    let rows = t
        .records
        .iter()
        .map(|(line, f)| {
            let line = *line;
            t.check_width(line, f.len(), &[d + s + 1, d + s + 2])?;
            let x = t.point(line, &f[..d], 0)?;
            let v = t.optional_block(line, &f[d..d + s], d)?;
            let y = t.label(line, &f[d + s])?;
            if let Some(delta) = f.get(d + s + 1) {
                t.delta(line, delta, &v)?;
            }
            Ok((line, MissingSample { x, v, y }))
        })
        .collect::<Result<_>>()?;
    Ok(Rows { rows })
}

/// Unlabelled queries. With `s = 0` every row has exactly `d` columns; with
/// `s > 0` a row has `d` columns (no `v`) or `d + s` columns.
pub fn parse_queries<R: Read>(path: &Path, input: R, d: usize, s: usize) -> Result<Rows<(Point, Option<Point>)>> {
    let t = read_table(path, input)?;
    let rows = t
        .records
        .iter()
        .map(|(line, f)| {
            let line = *line;
            let widths: &[usize] = if s == 0 { &[d] } else { &[d, d + s] };
            t.check_width(line, f.len(), widths)?;
            let x = t.point(line, &f[..d], 0)?;
            let v = if f.len() > d {
                t.optional_block(line, &f[d..], d)?
            } else {
                None
            };
            Ok((line, (x, v)))
        })
        .collect::<Result<_>>()?;
    Ok(Rows { rows })
}

/// Unlabelled points for hull construction: the first `d` columns of each row,
/// or every column when `d` is `None`.
pub fn parse_points<R: Read>(path: &Path, input: R, d: Option<usize>) -> Result<Rows<Point>> {
    let t = read_table(path, input)?;
    let d = d.unwrap_or(t.header.len());
    let rows = t
        .records
        .iter()
        .map(|(line, f)| {
            if f.len() < d {
                return Err(t.err(*line, format!("expected at least {d} columns, found {}", f.len())));
            }
            Ok((*line, t.point(*line, &f[..d], 0)?))
        })
        .collect::<Result<_>>()?;
    Ok(Rows { rows })
}

pub fn read_complete(path: &Path, d: Option<usize>) -> Result<Rows<LabeledSample>> {
    parse_complete(path, open(path)?, d)
}

pub fn read_missing(path: &Path, layout: Layout) -> Result<Rows<MissingSample>> {
    parse_missing(path, open(path)?, layout)
}

pub fn read_queries(path: &Path, d: usize, s: usize) -> Result<Rows<(Point, Option<Point>)>> {
    parse_queries(path, open(path)?, d, s)
}

pub fn read_points(path: &Path, d: Option<usize>) -> Result<Rows<Point>> {
    parse_points(path, open(path)?, d)
}

fn header(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// Writes `x1..xd, y`. Values use the shortest decimal form that reads back
/// to the same `f64`.
pub fn write_complete<W: Write>(out: W, data: &[LabeledSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let d = data.first().map_or(0, |s| s.x.dim());
    w.write_record(header("x", d).chain(["y".to_string()]))?;
    for s in data {
        w.write_record(s.x.iter().map(f64::to_string).chain([s.y.to_string()]))?;
    }
    w.flush().map_err(|e| Error::io("dataset output", e))
}

/// Writes `x1..xd, v1..vs, y, delta` with `NA` for missing `v`.
pub fn write_missing<W: Write>(out: W, data: &[MissingSample], layout: Layout) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(
        header("x", layout.d)
            .chain(header("v", layout.s))
            .chain(["y".to_string(), "delta".to_string()]),
    )?;
    for s in data {
        let v: Vec<String> = match &s.v {
            Some(v) => v.iter().map(f64::to_string).collect(),
            None => vec!["NA".to_string(); layout.s],
        };
        w.write_record(
            s.x.iter()
                .map(f64::to_string)
                .chain(v)
                .chain([s.y.to_string(), s.delta().to_string()]),
        )?;
    }
    w.flush().map_err(|e| Error::io("dataset output", e))
}
