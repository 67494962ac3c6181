//! Sidecar file formats: label files, reference-objective tables, and center
//! sets persisted as CSV.

use std::path::Path;

use thiserror::Error;

use crate::data::{CenterSet, DataError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: cannot parse {content:?}")]
    Parse { line: usize, content: String },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses a label file: one integer per line, blank lines ignored.
pub fn parse_labels(text: &str) -> Result<Vec<i64>, FormatError> {
    let mut labels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let value: i64 = line.parse().map_err(|_| FormatError::Parse {
            line: idx + 1,
            content: line.to_string(),
        })?;
        labels.push(value);
    }
    if labels.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(labels)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Vec<i64>, FormatError> {
    parse_labels(&std::fs::read_to_string(path)?)
}

pub fn write_labels(path: impl AsRef<Path>, labels: &[usize]) -> Result<(), FormatError> {
    let mut out = String::with_capacity(labels.len() * 2);
    for l in labels {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Maps arbitrary integer labels to compact ids `0..r` in first-appearance
/// order.
pub fn compact_labels(labels: &[i64]) -> Vec<usize> {
    let mut seen: Vec<i64> = Vec::new();
    labels
        .iter()
        .map(|&l| match seen.iter().position(|&s| s == l) {
            Some(p) => p,
            None => {
                seen.push(l);
                seen.len() - 1
            }
        })
        .collect()
}

/// Parses a reference-objective table: two-column CSV `k,f_best`, one row
/// per cluster count. A first line that does not parse is treated as a
/// header.
pub fn parse_fbest(text: &str) -> Result<Vec<(usize, f64)>, FormatError> {
    let mut rows = Vec::new();
    let mut first_content_line = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parsed = (|| {
            let (ks, fs) = line.split_once(',')?;
            let k: usize = ks.trim().parse().ok()?;
            let f: f64 = fs.trim().parse().ok()?;
            if k == 0 || !f.is_finite() {
                return None;
            }
            Some((k, f))
        })();
        match parsed {
            Some(row) => rows.push(row),
            None if first_content_line => {}
            None => {
                return Err(FormatError::Parse {
                    line: idx + 1,
                    content: line.to_string(),
                })
            }
        }
        first_content_line = false;
    }
    if rows.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(rows)
}

pub fn read_fbest(path: impl AsRef<Path>) -> Result<Vec<(usize, f64)>, FormatError> {
    parse_fbest(&std::fs::read_to_string(path)?)
}

/// Parses a persisted center set: plain CSV, one center per row.
pub fn parse_centers(text: &str) -> Result<CenterSet, FormatError> {
    let ds = crate::data::Dataset::parse_csv(text, &crate::data::CsvOptions::default())?;
    Ok(CenterSet::new(ds.points().to_vec(), ds.n())?)
}

pub fn read_centers(path: impl AsRef<Path>) -> Result<CenterSet, FormatError> {
    parse_centers(&std::fs::read_to_string(path)?)
}

pub fn write_centers(path: impl AsRef<Path>, centers: &CenterSet) -> Result<(), FormatError> {
    let mut out = String::new();
    for j in 0..centers.k() {
        let row: Vec<String> = centers.row(j).iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}
