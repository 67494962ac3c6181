//! Synthetic three-cluster 2-D data generator with a controllable outlier
//! share.
//!
//! Each dataset holds three clusters of equal size. Coordinates are sampled
//! independently per axis from normal distributions; inside the third
//! cluster a fixed share of points ("outliers") uses a wider standard
//! deviation. Sampling is Box-Muller on the crate's seeded generator, so a
//! `(seed, dataset_index)` pair fully determines the dataset.

use thiserror::Error;

use crate::data::{DataError, Dataset};
use crate::rng::SplitMix64;

/// Outlier shares the generator accepts.
pub const ALLOWED_FRACTIONS: [f64; 6] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];

#[derive(Debug, Error)]
pub enum GenError {
    #[error("outlier fraction {0} is not one of 0, 0.1, 0.2, 0.3, 0.4, 0.5")]
    InvalidFraction(f64),
    #[error(transparent)]
    Data(#[from] DataError),
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Per-cluster means on the two axes.
    pub means: [[f64; 2]; 3],
    /// Per-cluster standard deviations.
    pub sigmas: [f64; 3],
    /// Standard deviation of the outlier points in the third cluster.
    pub outlier_sigma: f64,
    pub points_per_cluster: usize,
    /// Share of the third cluster drawn with `outlier_sigma`.
    pub outlier_fraction: f64,
    /// Datasets per configuration when driven in batch.
    pub n_datasets: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            means: [[0.0, 0.0], [6.0, -1.0], [6.0, 2.0]],
            sigmas: [1.5, 0.5, 0.5],
            outlier_sigma: 2.0,
            points_per_cluster: 120,
            outlier_fraction: 0.0,
            n_datasets: 10,
            seed: 0,
        }
    }
}

impl GenConfig {
    fn outlier_count(&self) -> Result<usize, GenError> {
        if !ALLOWED_FRACTIONS
            .iter()
            .any(|&a| (self.outlier_fraction - a).abs() < 1e-12)
        {
            return Err(GenError::InvalidFraction(self.outlier_fraction));
        }
        Ok((self.outlier_fraction * self.points_per_cluster as f64).round() as usize)
    }
}

/// Generates dataset number `dataset_index` for the configuration: points of
/// the three clusters in order, with the outlier block first inside the
/// third cluster, plus the true labels 0/1/2 in generation order.
pub fn generate(cfg: &GenConfig, dataset_index: usize) -> Result<(Dataset, Vec<usize>), GenError> {
    let n_outliers = cfg.outlier_count()?;
    let ppc = cfg.points_per_cluster;
    let mut rng = SplitMix64::substream(cfg.seed, dataset_index as u64);

    let mut points = Vec::with_capacity(3 * ppc * 2);
    let mut labels = Vec::with_capacity(3 * ppc);
    for cluster in 0..3 {
        let [mx, my] = cfg.means[cluster];
        for p in 0..ppc {
            let sigma = if cluster == 2 && p < n_outliers {
                cfg.outlier_sigma
            } else {
                cfg.sigmas[cluster]
            };
            let (zx, zy) = rng.next_normal_pair();
            points.push(mx + sigma * zx);
            points.push(my + sigma * zy);
            labels.push(cluster);
        }
    }
    let data = Dataset::new(points, 3 * ppc, 2)?;
    Ok((data, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_exact_for_every_fraction() {
        for &fraction in &ALLOWED_FRACTIONS {
            let cfg = GenConfig {
                outlier_fraction: fraction,
                ..GenConfig::default()
            };
            let (data, labels) = generate(&cfg, 0).unwrap();
            assert_eq!(data.m(), 360);
            assert_eq!(data.n(), 2);
            assert_eq!(labels.len(), 360);
            for cluster in 0..3 {
                assert_eq!(labels.iter().filter(|&&l| l == cluster).count(), 120);
            }
        }
    }

    #[test]
    fn rejects_off_grid_fraction() {
        let cfg = GenConfig {
            outlier_fraction: 0.15,
            ..GenConfig::default()
        };
        assert!(matches!(
            generate(&cfg, 0),
            Err(GenError::InvalidFraction(_))
        ));
    }

    #[test]
    fn deterministic_per_seed_and_index() {
        let cfg = GenConfig {
            outlier_fraction: 0.2,
            seed: 9,
            ..GenConfig::default()
        };
        let (a, _) = generate(&cfg, 3).unwrap();
        let (b, _) = generate(&cfg, 3).unwrap();
        assert_eq!(a, b);
        let (c, _) = generate(&cfg, 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn outlier_block_count_matches_share() {
        let cfg = GenConfig {
            outlier_fraction: 0.2,
            ..GenConfig::default()
        };
        assert_eq!(cfg.outlier_count().unwrap(), 24);
        // fraction 0: the whole third cluster uses the narrow deviation
        let cfg0 = GenConfig::default();
        assert_eq!(cfg0.outlier_count().unwrap(), 0);
    }

    #[test]
    fn cluster_a_mean_within_clt_bound() {
        // 4σ/√n band per coordinate, per dataset
        let bound = 4.0 * 1.5 / (120.0f64).sqrt();
        let cfg = GenConfig {
            seed: 77,
            ..GenConfig::default()
        };
        for index in 0..10 {
            let (data, labels) = generate(&cfg, index).unwrap();
            let mut sum = [0.0f64; 2];
            let mut count = 0usize;
            for (i, &label) in labels.iter().enumerate() {
                if label == 0 {
                    sum[0] += data.row(i)[0];
                    sum[1] += data.row(i)[1];
                    count += 1;
                }
            }
            for (axis, total) in sum.iter().enumerate() {
                let mean = total / count as f64;
                assert!(
                    mean.abs() < bound,
                    "dataset {index}: axis {axis} mean {mean}"
                );
            }
        }
    }

    #[test]
    fn regular_c_points_match_narrow_sigma() {
        let cfg = GenConfig {
            outlier_fraction: 0.2,
            seed: 5,
            ..GenConfig::default()
        };
        for index in 0..10 {
            let (data, _) = generate(&cfg, index).unwrap();
            // third cluster occupies rows 240..360; outliers are the first 24
            for axis in 0..2 {
                let vals: Vec<f64> = (264..360).map(|i| data.row(i)[axis]).collect();
                let mean: f64 = vals.iter().sum::<f64>() / vals.len() as f64;
                let var: f64 =
                    vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64;
                let sd = var.sqrt();
                assert!((0.35..=0.65).contains(&sd), "dataset {index}: sd {sd}");
            }
        }
    }
}
