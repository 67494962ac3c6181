//! Dataset representation, CSV ingestion, nearest-center assignment, and
//! per-cluster SSE bookkeeping.

use std::path::Path;

use thiserror::Error;

use crate::parallel::map_chunks;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("empty input: no data rows")]
    EmptyFile,
    #[error("row {row}: found {found} columns, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: cannot parse {content:?} as a finite number")]
    ParseError {
        row: usize,
        col: usize,
        content: String,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// CSV reading options: single-character delimiter, optional one-line header.
#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub delimiter: char,
    pub has_header: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: ',',
            has_header: false,
        }
    }
}

/// An immutable `m × n` collection of data points, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<f64>,
    m: usize,
    n: usize,
}

impl Dataset {
    /// Builds a dataset from row-major values. Requires `m, n >= 1`,
    /// `points.len() == m * n`, and every entry finite.
    pub fn new(points: Vec<f64>, m: usize, n: usize) -> Result<Self, DataError> {
        if m == 0 || n == 0 {
            return Err(DataError::Invalid("m and n must be at least 1".into()));
        }
        if points.len() != m * n {
            return Err(DataError::DimensionMismatch {
                left: points.len(),
                right: m * n,
            });
        }
        if let Some(pos) = points.iter().position(|v| !v.is_finite()) {
            return Err(DataError::Invalid(format!(
                "non-finite value at flat index {pos}"
            )));
        }
        Ok(Self { points, m, n })
    }

    /// Parses CSV text: UTF-8, configurable delimiter, decimal point '.',
    /// no quoting. Blank lines are ignored; row/column positions in errors
    /// are 1-based over the raw file (a header counts as row 1).
    pub fn parse_csv(text: &str, opts: &CsvOptions) -> Result<Self, DataError> {
        let mut points = Vec::new();
        let mut n = 0usize;
        let mut m = 0usize;
        let mut seen_header = false;
        for (line_idx, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() {
                continue;
            }
            if opts.has_header && !seen_header {
                seen_header = true;
                continue;
            }
            let row = line_idx + 1;
            let mut width = 0usize;
            for (col_idx, cell) in line.split(opts.delimiter).enumerate() {
                let value: f64 = cell.trim().parse().map_err(|_| DataError::ParseError {
                    row,
                    col: col_idx + 1,
                    content: cell.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(DataError::ParseError {
                        row,
                        col: col_idx + 1,
                        content: cell.to_string(),
                    });
                }
                points.push(value);
                width += 1;
            }
            if m == 0 {
                n = width;
            } else if width != n {
                return Err(DataError::RaggedRows {
                    row,
                    expected: n,
                    found: width,
                });
            }
            m += 1;
        }
        if m == 0 {
            return Err(DataError::EmptyFile);
        }
        Self::new(points, m, n)
    }

    /// Loads a CSV file from disk. Row order is preserved.
    pub fn load_csv(path: impl AsRef<Path>, opts: &CsvOptions) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_csv(&text, opts)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    /// New dataset holding the given rows, in the given order.
    pub fn select(&self, rows: &[usize]) -> Result<Self, DataError> {
        if rows.is_empty() {
            return Err(DataError::EmptyFile);
        }
        let mut points = Vec::with_capacity(rows.len() * self.n);
        for &i in rows {
            if i >= self.m {
                return Err(DataError::DimensionMismatch {
                    left: i,
                    right: self.m,
                });
            }
            points.extend_from_slice(self.row(i));
        }
        Self::new(points, rows.len(), self.n)
    }
}

/// An ordered list of `k` centers in `R^n`, flattened row-major so the solver
/// can treat it as one decision vector of length `k·n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSet {
    coords: Vec<f64>,
    k: usize,
    n: usize,
}

impl CenterSet {
    pub fn new(coords: Vec<f64>, n: usize) -> Result<Self, DataError> {
        if n == 0 || coords.is_empty() || !coords.len().is_multiple_of(n) {
            return Err(DataError::DimensionMismatch {
                left: coords.len(),
                right: n,
            });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(DataError::Invalid("non-finite center coordinate".into()));
        }
        let k = coords.len() / n;
        Ok(Self { coords, k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.coords[j * self.n..(j + 1) * self.n]
    }
}

/// Per-point nearest-center index and squared distance, plus cluster sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    labels: Vec<usize>,
    sq_dists: Vec<f64>,
    cluster_sizes: Vec<usize>,
}

impl Assignment {
    #[cfg(test)]
    pub(crate) fn from_parts(
        labels: Vec<usize>,
        sq_dists: Vec<f64>,
        cluster_sizes: Vec<usize>,
    ) -> Self {
        Self {
            labels,
            sq_dists,
            cluster_sizes,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sq_dists(&self) -> &[f64] {
        &self.sq_dists
    }

    pub fn cluster_sizes(&self) -> &[usize] {
        &self.cluster_sizes
    }

    /// Indices of the points assigned to cluster `j`, in point order.
    pub fn members(&self, j: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| (l == j).then_some(i))
            .collect()
    }
}

/// Squared Euclidean distance, summed naively per point.
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

/// Assigns every point to its nearest center; ties break to the smallest
/// center index. Deterministic for any worker count.
pub fn assign(data: &Dataset, centers: &CenterSet) -> Result<Assignment, DataError> {
    if centers.n() != data.n() {
        return Err(DataError::DimensionMismatch {
            left: centers.n(),
            right: data.n(),
        });
    }
    let k = centers.k();
    let parts = map_chunks(data.m(), |_, range| {
        let mut labels = Vec::with_capacity(range.len());
        let mut dists = Vec::with_capacity(range.len());
        let mut sizes = vec![0usize; k];
        for i in range {
            let point = data.row(i);
            let mut best = 0usize;
            let mut best_d = sq_dist(centers.row(0), point);
            for j in 1..k {
                let d = sq_dist(centers.row(j), point);
                if d < best_d {
                    best = j;
                    best_d = d;
                }
            }
            labels.push(best);
            dists.push(best_d);
            sizes[best] += 1;
        }
        (labels, dists, sizes)
    });

    let mut labels = Vec::with_capacity(data.m());
    let mut sq_dists = Vec::with_capacity(data.m());
    let mut cluster_sizes = vec![0usize; k];
    for (l, d, s) in parts {
        labels.extend(l);
        sq_dists.extend(d);
        for (acc, v) in cluster_sizes.iter_mut().zip(s) {
            *acc += v;
        }
    }
    Ok(Assignment {
        labels,
        sq_dists,
        cluster_sizes,
    })
}

/// Per-cluster sum of squared distances under an existing assignment.
/// Entry `j` is the SSE of cluster `j`; the entries sum to the clustering
/// objective of `centers`.
pub fn cluster_sse(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<Vec<f64>, DataError> {
    if centers.n() != data.n() {
        return Err(DataError::DimensionMismatch {
            left: centers.n(),
            right: data.n(),
        });
    }
    if assignment.labels.len() != data.m() {
        return Err(DataError::DimensionMismatch {
            left: assignment.labels.len(),
            right: data.m(),
        });
    }
    let k = centers.k();
    if let Some(&bad) = assignment.labels.iter().find(|&&l| l >= k) {
        return Err(DataError::DimensionMismatch {
            left: bad,
            right: k,
        });
    }
    let parts = map_chunks(data.m(), |_, range| {
        let mut sse = vec![0.0f64; k];
        for i in range {
            sse[assignment.labels[i]] += assignment.sq_dists[i];
        }
        sse
    });
    let mut sse = vec![0.0f64; k];
    for part in parts {
        for (acc, v) in sse.iter_mut().zip(part) {
            *acc += v;
        }
    }
    Ok(sse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset_1d(values: &[f64]) -> Dataset {
        Dataset::new(values.to_vec(), values.len(), 1).unwrap()
    }

    #[test]
    fn parse_csv_single_column() {
        let ds = Dataset::parse_csv("0\n1\n4\n5", &CsvOptions::default()).unwrap();
        assert_eq!(ds.m(), 4);
        assert_eq!(ds.n(), 1);
        assert_eq!(ds.points(), &[0.0, 1.0, 4.0, 5.0]);
    }

    #[test]
    fn parse_csv_skips_header() {
        let opts = CsvOptions {
            delimiter: ',',
            has_header: true,
        };
        let ds = Dataset::parse_csv("x,y\n1,2\n3,4\n", &opts).unwrap();
        assert_eq!(ds.m(), 2);
        assert_eq!(ds.n(), 2);
        assert_eq!(ds.points(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn parse_csv_reports_bad_cell_position() {
        let err = Dataset::parse_csv("1,2\n3,abc\n", &CsvOptions::default()).unwrap_err();
        match err {
            DataError::ParseError { row, col, content } => {
                assert_eq!((row, col), (2, 2));
                assert_eq!(content, "abc");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_csv_rejects_ragged_rows() {
        let err = Dataset::parse_csv("1,2\n3\n", &CsvOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            DataError::RaggedRows {
                row: 2,
                expected: 2,
                found: 1
            }
        ));
    }

    #[test]
    fn parse_csv_rejects_empty_and_nonfinite() {
        assert!(matches!(
            Dataset::parse_csv("", &CsvOptions::default()),
            Err(DataError::EmptyFile)
        ));
        assert!(matches!(
            Dataset::parse_csv("\n\n", &CsvOptions::default()),
            Err(DataError::EmptyFile)
        ));
        assert!(matches!(
            Dataset::parse_csv("inf\n", &CsvOptions::default()),
            Err(DataError::ParseError { .. })
        ));
        assert!(matches!(
            Dataset::parse_csv("1e999\n", &CsvOptions::default()),
            Err(DataError::ParseError { .. })
        ));
    }

    #[test]
    fn parse_csv_custom_delimiter() {
        let opts = CsvOptions {
            delimiter: ';',
            has_header: false,
        };
        let ds = Dataset::parse_csv("1;2\n3;4", &opts).unwrap();
        assert_eq!(ds.points(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn assign_two_centers() {
        let ds = dataset_1d(&[0.0, 1.0, 4.0, 5.0]);
        let centers = CenterSet::new(vec![0.5, 4.5], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(a.labels(), &[0, 0, 1, 1]);
        assert_eq!(a.sq_dists(), &[0.25, 0.25, 0.25, 0.25]);
        assert_eq!(a.cluster_sizes(), &[2, 2]);
    }

    #[test]
    fn assign_single_center_labels_all_zero() {
        let ds = dataset_1d(&[3.0, -1.0, 7.0]);
        let centers = CenterSet::new(vec![2.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(a.labels(), &[0, 0, 0]);
    }

    #[test]
    fn assign_tie_breaks_to_smallest_index() {
        let ds = dataset_1d(&[1.0]);
        let centers = CenterSet::new(vec![0.0, 2.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(a.labels(), &[0]);
    }

    #[test]
    fn assign_rejects_dimension_mismatch() {
        let ds = Dataset::new(vec![1.0, 2.0], 1, 2).unwrap();
        let centers = CenterSet::new(vec![0.0], 1).unwrap();
        assert!(matches!(
            assign(&ds, &centers),
            Err(DataError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cluster_sse_hand_values() {
        let ds = dataset_1d(&[0.0, 1.0, 4.0, 5.0]);
        let centers = CenterSet::new(vec![0.5, 4.5], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        let sse = cluster_sse(&ds, &a, &centers).unwrap();
        assert_eq!(sse, vec![0.5, 0.5]);
    }

    #[test]
    fn cluster_sse_zero_when_centers_on_points() {
        let ds = dataset_1d(&[2.0, 9.0]);
        let centers = CenterSet::new(vec![2.0, 9.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        let sse = cluster_sse(&ds, &a, &centers).unwrap();
        assert_eq!(sse, vec![0.0, 0.0]);
    }

    #[test]
    fn cluster_sse_single_center() {
        let ds = dataset_1d(&[0.0, 2.0]);
        let centers = CenterSet::new(vec![1.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        let sse = cluster_sse(&ds, &a, &centers).unwrap();
        assert_eq!(sse, vec![2.0]);
    }

    #[test]
    fn assign_is_idempotent() {
        let ds = Dataset::new(vec![0.0, 0.1, 1.0, 0.9, 4.0, 4.2, 5.0, 5.1], 4, 2).unwrap();
        let centers = CenterSet::new(vec![0.5, 0.5, 4.5, 4.6], 2).unwrap();
        let a1 = assign(&ds, &centers).unwrap();
        let a2 = assign(&ds, &centers).unwrap();
        assert_eq!(a1, a2);
    }

    #[test]
    fn permuting_centers_permutes_labels() {
        let ds = dataset_1d(&[0.0, 1.0, 4.0, 5.0]);
        let c1 = CenterSet::new(vec![0.5, 4.5], 1).unwrap();
        let c2 = CenterSet::new(vec![4.5, 0.5], 1).unwrap();
        let a1 = assign(&ds, &c1).unwrap();
        let a2 = assign(&ds, &c2).unwrap();
        let swapped: Vec<usize> = a1.labels().iter().map(|&l| 1 - l).collect();
        assert_eq!(a2.labels(), swapped.as_slice());
        assert_eq!(a1.sq_dists(), a2.sq_dists());
    }
}
