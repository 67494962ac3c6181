//! Evaluation metrics: relative errors against reference objectives,
//! Davies-Bouldin and Dunn validity indices, adjusted Rand index, and
//! accuracy against true labels.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::data::{sq_dist, Assignment, CenterSet, Dataset};
use crate::parallel::map_chunks;

/// Cluster counts entering the averaged relative error.
pub const AVERAGE_ERROR_LEVELS: [usize; 8] = [2, 3, 4, 5, 10, 15, 20, 25];

#[derive(Debug, Error)]
pub enum ValidateError {
    #[error("reference objective must be positive, got {0}")]
    NonpositiveBest(f64),
    #[error("missing relative errors for cluster counts {0:?}")]
    MissingLevel(Vec<usize>),
    #[error("label sequences have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("cluster {0} is empty")]
    EmptyCluster(usize),
    #[error("clusters {0} and {1} have coincident centers")]
    CoincidentCenters(usize, usize),
    #[error("validity indices need more than one cluster")]
    KTooSmall,
    #[error("{0} clusters exceed the supported maximum of 64 for matching")]
    TooManyClusters(usize),
    #[error("assignment does not match the dataset: {0}")]
    Inconsistent(String),
}

/// Relative error of `f_k` against a reference objective, in percent.
/// Negative when `f_k` beats the reference.
pub fn relative_error(f_k: f64, f_best: f64) -> Result<f64, ValidateError> {
    if !f_best.is_finite() || f_best <= 0.0 {
        return Err(ValidateError::NonpositiveBest(f_best));
    }
    Ok(100.0 * (f_k - f_best) / f_best)
}

/// Mean of the relative errors over the eight standard cluster counts.
pub fn average_relative_error(errors: &BTreeMap<usize, f64>) -> Result<f64, ValidateError> {
    let missing: Vec<usize> = AVERAGE_ERROR_LEVELS
        .iter()
        .copied()
        .filter(|k| !errors.contains_key(k))
        .collect();
    if !missing.is_empty() {
        return Err(ValidateError::MissingLevel(missing));
    }
    let sum: f64 = AVERAGE_ERROR_LEVELS.iter().map(|k| errors[k]).sum();
    Ok(sum / AVERAGE_ERROR_LEVELS.len() as f64)
}

/// Counts of points shared between two partitions, with row/column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    /// Builds the table from two equally long label sequences. Labels may be
    /// arbitrary; they are compacted in first-appearance order.
    pub fn from_labels(
        true_labels: &[usize],
        pred_labels: &[usize],
    ) -> Result<Self, ValidateError> {
        if true_labels.len() != pred_labels.len() {
            return Err(ValidateError::LengthMismatch {
                left: true_labels.len(),
                right: pred_labels.len(),
            });
        }
        let compact = |labels: &[usize]| -> (Vec<usize>, usize) {
            let mut seen: Vec<usize> = Vec::new();
            let ids = labels
                .iter()
                .map(|&l| match seen.iter().position(|&s| s == l) {
                    Some(p) => p,
                    None => {
                        seen.push(l);
                        seen.len() - 1
                    }
                })
                .collect();
            (ids, seen.len())
        };
        let (u, r) = compact(true_labels);
        let (v, s) = compact(pred_labels);
        let mut counts = vec![vec![0u64; s]; r];
        for (&i, &j) in u.iter().zip(&v) {
            counts[i][j] += 1;
        }
        Ok(Self::from_counts(counts))
    }

    /// Builds the table from raw counts.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Self {
        let s = counts.first().map_or(0, Vec::len);
        let row_sums: Vec<u64> = counts.iter().map(|row| row.iter().sum()).collect();
        let mut col_sums = vec![0u64; s];
        for row in &counts {
            for (acc, v) in col_sums.iter_mut().zip(row) {
                *acc += v;
            }
        }
        let total = row_sums.iter().sum();
        Self {
            counts,
            row_sums,
            col_sums,
            total,
        }
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

fn choose2(n: u64) -> u128 {
    let n = n as u128;
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Adjusted Rand index of the two partitions described by a contingency
/// table. Pair counts are exact integers; only the final quotient is a
/// floating-point division.
pub fn ari_from_table(table: &ContingencyTable) -> f64 {
    let index: u128 = table.counts.iter().flatten().map(|&c| choose2(c)).sum();
    let sum_a: u128 = table.row_sums.iter().map(|&a| choose2(a)).sum();
    let sum_b: u128 = table.col_sums.iter().map(|&b| choose2(b)).sum();
    let n2 = choose2(table.total);
    if n2 == 0 {
        return 1.0;
    }
    // ARI = (index − sum_a·sum_b/n2) / ((sum_a + sum_b)/2 − sum_a·sum_b/n2),
    // scaled by 2·n2 to stay integral
    let num = 2i128 * (index as i128 * n2 as i128 - (sum_a * sum_b) as i128);
    let den = (sum_a + sum_b) as i128 * n2 as i128 - 2 * (sum_a * sum_b) as i128;
    if den == 0 {
        return if num == 0 { 1.0 } else { 0.0 };
    }
    if num == den {
        return 1.0;
    }
    num as f64 / den as f64
}

/// Adjusted Rand index between a true and a predicted labeling.
pub fn adjusted_rand(true_labels: &[usize], pred_labels: &[usize]) -> Result<f64, ValidateError> {
    Ok(ari_from_table(&ContingencyTable::from_labels(
        true_labels,
        pred_labels,
    )?))
}

/// Minimum-cost assignment on a square matrix (Hungarian algorithm with
/// potentials). Returns the matched column for every row.
fn hungarian_min(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[matched_row[j] - 1] = j - 1;
    }
    assignment
}

/// Share of points on the diagonal of the best one-to-one matching between
/// predicted clusters and true classes (maximum-weight assignment on the
/// contingency table).
pub fn accuracy_from_table(table: &ContingencyTable) -> Result<f64, ValidateError> {
    let r = table.counts.len();
    let s = table.col_sums.len();
    if s > 64 || r > 64 {
        return Err(ValidateError::TooManyClusters(r.max(s)));
    }
    if table.total == 0 {
        return Err(ValidateError::LengthMismatch { left: 0, right: 0 });
    }
    let dim = r.max(s);
    let mut cost = vec![vec![0i64; dim]; dim];
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            cost[i][j] = -(c as i64);
        }
    }
    let assignment = hungarian_min(&cost);
    let mut matched: u64 = 0;
    for (i, &j) in assignment.iter().enumerate() {
        if i < r && j < s {
            matched += table.counts[i][j];
        }
    }
    Ok(matched as f64 / table.total as f64)
}

/// Accuracy of a predicted labeling against true labels under the optimal
/// cluster-to-class matching.
pub fn accuracy(true_labels: &[usize], pred_labels: &[usize]) -> Result<f64, ValidateError> {
    accuracy_from_table(&ContingencyTable::from_labels(true_labels, pred_labels)?)
}

/// Accuracy under a caller-supplied fixed matching given as
/// `(true_class, predicted_cluster)` pairs; lets published confusion-table
/// readings be reproduced when they differ from the optimal matching.
pub fn accuracy_with_matching(
    table: &ContingencyTable,
    matching: &[(usize, usize)],
) -> Result<f64, ValidateError> {
    if table.total == 0 {
        return Err(ValidateError::LengthMismatch { left: 0, right: 0 });
    }
    let mut matched: u64 = 0;
    for &(i, j) in matching {
        if i >= table.counts.len() || j >= table.col_sums.len() {
            return Err(ValidateError::Inconsistent(format!(
                "matching entry ({i}, {j}) outside the {}x{} table",
                table.counts.len(),
                table.col_sums.len()
            )));
        }
        matched += table.counts[i][j];
    }
    Ok(matched as f64 / table.total as f64)
}

fn check_clusters(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<(), ValidateError> {
    if centers.k() < 2 {
        return Err(ValidateError::KTooSmall);
    }
    if assignment.labels().len() != data.m() {
        return Err(ValidateError::Inconsistent(format!(
            "{} labels for {} points",
            assignment.labels().len(),
            data.m()
        )));
    }
    if let Some(j) = assignment.cluster_sizes().iter().position(|&s| s == 0) {
        return Err(ValidateError::EmptyCluster(j));
    }
    Ok(())
}

/// Mean unsquared distance of every cluster's points to its center.
pub fn cluster_mean_radii(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<Vec<f64>, ValidateError> {
    check_clusters(data, assignment, centers)?;
    let k = centers.k();
    let parts = map_chunks(data.m(), |_, range| {
        let mut sums = vec![0.0f64; k];
        for i in range {
            sums[assignment.labels()[i]] += assignment.sq_dists()[i].sqrt();
        }
        sums
    });
    let mut sums = vec![0.0f64; k];
    for part in parts {
        for (acc, v) in sums.iter_mut().zip(part) {
            *acc += v;
        }
    }
    Ok(sums
        .iter()
        .zip(assignment.cluster_sizes())
        .map(|(&s, &c)| s / c as f64)
        .collect())
}

/// Davies-Bouldin index: lower is better.
pub fn davies_bouldin(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<f64, ValidateError> {
    let radii = cluster_mean_radii(data, assignment, centers)?;
    let k = centers.k();
    let mut sum = 0.0;
    for i in 0..k {
        let mut worst = 0.0f64;
        for j in 0..k {
            if i == j {
                continue;
            }
            let d = sq_dist(centers.row(i), centers.row(j)).sqrt();
            if d == 0.0 {
                return Err(ValidateError::CoincidentCenters(i.min(j), i.max(j)));
            }
            worst = worst.max((radii[i] + radii[j]) / d);
        }
        sum += worst;
    }
    Ok(sum / k as f64)
}

/// Dunn index value; `Unbounded` marks a zero intra-cluster radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DunnIndex {
    Finite(f64),
    Unbounded,
}

impl DunnIndex {
    pub fn value(&self) -> Option<f64> {
        match self {
            DunnIndex::Finite(v) => Some(*v),
            DunnIndex::Unbounded => None,
        }
    }
}

/// Dunn index: smallest center separation over largest cluster radius;
/// higher is better.
pub fn dunn(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<DunnIndex, ValidateError> {
    check_clusters(data, assignment, centers)?;
    let k = centers.k();
    let mut min_sep = f64::INFINITY;
    for i in 0..k {
        for j in i + 1..k {
            let d = sq_dist(centers.row(i), centers.row(j)).sqrt();
            if d == 0.0 {
                return Err(ValidateError::CoincidentCenters(i, j));
            }
            min_sep = min_sep.min(d);
        }
    }
    let max_radius_sq = assignment
        .sq_dists()
        .iter()
        .fold(0.0f64, |acc, &d| acc.max(d));
    if max_radius_sq == 0.0 {
        return Ok(DunnIndex::Unbounded);
    }
    Ok(DunnIndex::Finite(min_sep / max_radius_sq.sqrt()))
}

/// Validity indices of one clustering level.
#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub dbi: f64,
    pub dunn: DunnIndex,
    pub mean_radii: Vec<f64>,
}

pub fn validity(
    data: &Dataset,
    assignment: &Assignment,
    centers: &CenterSet,
) -> Result<ValidityReport, ValidateError> {
    Ok(ValidityReport {
        dbi: davies_bouldin(data, assignment, centers)?,
        dunn: dunn(data, assignment, centers)?,
        mean_radii: cluster_mean_radii(data, assignment, centers)?,
    })
}

#[cfg(test)]
impl Assignment {
    fn test_only(labels: Vec<usize>, sq_dists: Vec<f64>, cluster_sizes: Vec<usize>) -> Self {
        Self::from_parts(labels, sq_dists, cluster_sizes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::assign;

    fn dataset_1d(values: &[f64]) -> Dataset {
        Dataset::new(values.to_vec(), values.len(), 1).unwrap()
    }

    #[test]
    fn relative_error_basics() {
        assert_eq!(relative_error(5.0, 5.0).unwrap(), 0.0);
        assert!((relative_error(1.1, 1.0).unwrap() - 10.0).abs() < 1e-9);
        let e = relative_error(3.72087e11, 3.68403e11).unwrap();
        assert!((e - 1.0000).abs() < 5e-5, "e = {e}");
        assert!(matches!(
            relative_error(1.0, 0.0),
            Err(ValidateError::NonpositiveBest(_))
        ));
    }

    #[test]
    fn average_relative_error_formula() {
        let zeros: BTreeMap<usize, f64> = AVERAGE_ERROR_LEVELS.iter().map(|&k| (k, 0.0)).collect();
        assert_eq!(average_relative_error(&zeros).unwrap(), 0.0);

        let vals = [0.0, 0.0, 0.0, 0.0, 0.06, 0.89, 0.46, 0.30];
        let map: BTreeMap<usize, f64> = AVERAGE_ERROR_LEVELS
            .iter()
            .zip(vals)
            .map(|(&k, v)| (k, v))
            .collect();
        assert!((average_relative_error(&map).unwrap() - 0.21375).abs() < 1e-12);
    }

    #[test]
    fn average_relative_error_reports_missing_levels() {
        let mut map: BTreeMap<usize, f64> =
            AVERAGE_ERROR_LEVELS.iter().map(|&k| (k, 0.0)).collect();
        map.remove(&15);
        match average_relative_error(&map) {
            Err(ValidateError::MissingLevel(ks)) => assert_eq!(ks, vec![15]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contingency_sums() {
        let t = ContingencyTable::from_labels(&[0, 0, 1, 1, 2], &[1, 1, 0, 0, 0]).unwrap();
        assert_eq!(t.total(), 5);
        assert_eq!(t.row_sums(), &[2, 2, 1]);
        assert_eq!(t.col_sums(), &[2, 3]);
    }

    #[test]
    fn ari_identical_partitions_is_one() {
        let labels = [0usize, 0, 1, 1, 2, 2, 2];
        assert_eq!(adjusted_rand(&labels, &labels).unwrap(), 1.0);
        // relabeled but identical partition
        let relabeled = [5usize, 5, 0, 0, 9, 9, 9];
        assert_eq!(adjusted_rand(&labels, &relabeled).unwrap(), 1.0);
    }

    #[test]
    fn ari_published_tables() {
        let iris =
            ContingencyTable::from_counts(vec![vec![50, 0, 0], vec![0, 50, 0], vec![15, 0, 35]]);
        assert!((ari_from_table(&iris) - 0.7455).abs() < 0.00005);

        let arcane = ContingencyTable::from_counts(vec![vec![17, 27], vec![21, 35]]);
        assert!((ari_from_table(&arcane) - (-0.0087)).abs() < 0.00005);
    }

    #[test]
    fn ari_symmetry_and_length_check() {
        let a = [0usize, 0, 1, 1, 2, 2];
        let b = [0usize, 1, 1, 0, 2, 2];
        assert_eq!(
            adjusted_rand(&a, &b).unwrap(),
            adjusted_rand(&b, &a).unwrap()
        );
        assert!(matches!(
            adjusted_rand(&a, &b[..5]),
            Err(ValidateError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn accuracy_published_tables() {
        let iris =
            ContingencyTable::from_counts(vec![vec![50, 0, 0], vec![0, 50, 0], vec![15, 0, 35]]);
        assert!((accuracy_from_table(&iris).unwrap() - 0.900).abs() < 1e-9);

        let soybean = ContingencyTable::from_counts(vec![
            vec![5, 0, 0, 5],
            vec![0, 10, 0, 0],
            vec![0, 0, 10, 0],
            vec![5, 0, 0, 12],
        ]);
        assert!((accuracy_from_table(&soybean).unwrap() - 37.0 / 47.0).abs() < 1e-9);
    }

    #[test]
    fn accuracy_identical_is_one_and_beats_majority() {
        let labels = [0usize, 1, 1, 2, 2, 2];
        assert_eq!(accuracy(&labels, &labels).unwrap(), 1.0);
        // majority-class share is a lower bound for any matching
        let pred = [0usize, 0, 0, 0, 0, 0];
        let acc = accuracy(&labels, &pred).unwrap();
        assert!(acc >= 3.0 / 6.0);
    }

    #[test]
    fn accuracy_matches_brute_force_on_small_tables() {
        fn brute(t: &ContingencyTable) -> f64 {
            // enumerate all matchings of rows to columns (padded square)
            let r = t.counts().len();
            let s = t.col_sums().len();
            let dim = r.max(s);
            let mut cols: Vec<usize> = (0..dim).collect();
            let mut best = 0u64;
            permute(&mut cols, 0, &mut |perm| {
                let mut total = 0u64;
                for (i, &j) in perm.iter().enumerate() {
                    if i < r && j < s {
                        total += t.counts()[i][j];
                    }
                }
                best = best.max(total);
            });
            best as f64 / t.total() as f64
        }
        fn permute(v: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
            if at == v.len() {
                f(v);
                return;
            }
            for i in at..v.len() {
                v.swap(at, i);
                permute(v, at + 1, f);
                v.swap(at, i);
            }
        }

        let mut state = 123u64;
        let mut rand = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        for _ in 0..30 {
            let r = 2 + (rand() % 3) as usize;
            let s = 2 + (rand() % 3) as usize;
            let counts: Vec<Vec<u64>> = (0..r)
                .map(|_| (0..s).map(|_| rand() % 7).collect())
                .collect();
            let t = ContingencyTable::from_counts(counts);
            if t.total() == 0 {
                continue;
            }
            let fast = accuracy_from_table(&t).unwrap();
            let slow = brute(&t);
            assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }
    }

    #[test]
    fn accuracy_with_fixed_matching_reproduces_diagonal() {
        let arcane = ContingencyTable::from_counts(vec![vec![17, 27], vec![21, 35]]);
        // published diagonal reading: (17 + 35) / 100
        let acc = accuracy_with_matching(&arcane, &[(0, 0), (1, 1)]).unwrap();
        assert!((acc - 0.52).abs() < 1e-12);
        // the optimal matching does better
        assert!(accuracy_from_table(&arcane).unwrap() >= acc);
    }

    #[test]
    fn dbi_hand_value() {
        let ds = dataset_1d(&[0.0, 1.0, 4.0, 5.0]);
        let centers = CenterSet::new(vec![0.5, 4.5], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        let dbi = davies_bouldin(&ds, &a, &centers).unwrap();
        assert!((dbi - 0.25).abs() < 1e-12);
    }

    #[test]
    fn dbi_zero_for_singleton_clusters() {
        let ds = dataset_1d(&[0.0, 4.0]);
        let centers = CenterSet::new(vec![0.0, 4.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(davies_bouldin(&ds, &a, &centers).unwrap(), 0.0);
    }

    #[test]
    fn dbi_detects_coincident_centers() {
        let ds = dataset_1d(&[0.0, 1.0]);
        let centers = CenterSet::new(vec![0.0, 0.0], 1).unwrap();
        // hand-build an assignment that keeps both clusters populated
        let a = Assignment::test_only(vec![0, 1], vec![0.0, 1.0], vec![1, 1]);
        assert!(matches!(
            davies_bouldin(&ds, &a, &centers),
            Err(ValidateError::CoincidentCenters(0, 1))
        ));
    }

    #[test]
    fn dbi_needs_nonempty_clusters() {
        let ds = dataset_1d(&[0.0, 1.0]);
        let centers = CenterSet::new(vec![0.5, 90.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert!(matches!(
            davies_bouldin(&ds, &a, &centers),
            Err(ValidateError::EmptyCluster(1))
        ));
    }

    #[test]
    fn dunn_hand_values() {
        let ds = dataset_1d(&[0.0, 1.0, 4.0, 5.0]);
        let centers = CenterSet::new(vec![0.5, 4.5], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(dunn(&ds, &a, &centers).unwrap(), DunnIndex::Finite(8.0));

        let ds2 = dataset_1d(&[0.0, 4.0, 6.0]);
        let centers2 = CenterSet::new(vec![0.0, 5.0], 1).unwrap();
        let a2 = assign(&ds2, &centers2).unwrap();
        assert_eq!(dunn(&ds2, &a2, &centers2).unwrap(), DunnIndex::Finite(5.0));
    }

    #[test]
    fn dunn_translation_invariance() {
        let base = [0.0, 1.1, 3.9, 5.2];
        let ds = dataset_1d(&base);
        let centers = CenterSet::new(vec![0.55, 4.55], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        let d1 = dunn(&ds, &a, &centers).unwrap().value().unwrap();

        let shifted: Vec<f64> = base.iter().map(|v| v + 100.0).collect();
        let ds2 = dataset_1d(&shifted);
        let centers2 = CenterSet::new(vec![100.55, 104.55], 1).unwrap();
        let a2 = assign(&ds2, &centers2).unwrap();
        let d2 = dunn(&ds2, &a2, &centers2).unwrap().value().unwrap();
        assert!((d1 - d2).abs() <= 1e-9 * d1.abs());
    }

    #[test]
    fn dunn_unbounded_when_points_sit_on_centers() {
        let ds = dataset_1d(&[0.0, 4.0]);
        let centers = CenterSet::new(vec![0.0, 4.0], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert_eq!(dunn(&ds, &a, &centers).unwrap(), DunnIndex::Unbounded);
    }

    #[test]
    fn indices_reject_single_cluster() {
        let ds = dataset_1d(&[0.0, 1.0]);
        let centers = CenterSet::new(vec![0.5], 1).unwrap();
        let a = assign(&ds, &centers).unwrap();
        assert!(matches!(
            davies_bouldin(&ds, &a, &centers),
            Err(ValidateError::KTooSmall)
        ));
        assert!(matches!(
            dunn(&ds, &a, &centers),
            Err(ValidateError::KTooSmall)
        ));
    }
}
