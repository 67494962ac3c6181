//! Incremental split-and-refine clustering driver.
//!
//! Level 1 solves the convex one-center problem. Each later level `k` takes
//! the previous solution, picks the cluster with the largest SSE among those
//! big enough to split, finds a second center inside it by solving the
//! starting-point auxiliary problem from several candidate starts, splits it
//! with the two-center auxiliary problem, and finally refines all `k`
//! centers on the full dataset (level 2 uses the split result directly). The
//! report keeps every intermediate solution, its objective, and cumulative
//! timings.

use std::time::Instant;

use thiserror::Error;

use crate::data::{assign, cluster_sse, CenterSet, DataError, Dataset};
use crate::lmbm::{minimize, SolverConfig, SolverError};
use crate::objective::{
    eval_k_clustering, make_spa_context, KClustering, ObjectiveError, SpaContext, SpaObjective,
    TwoAux,
};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("invalid split configuration: {0}")]
    InvalidConfig(String),
    #[error("k_max {k_max} exceeds the number of data points {m}")]
    KMaxExceedsPoints { k_max: usize, m: usize },
    #[error("no cluster is large enough to split")]
    NoSplittableCluster,
    #[error("subset of {len} points is too small to split")]
    SubsetTooSmall { len: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error(transparent)]
    Data(#[from] DataError),
}

#[derive(Debug, Clone)]
pub struct SplitConfig {
    /// Target cluster count.
    pub k_max: usize,
    /// Number of starting points for the starting-point auxiliary problem.
    pub starts: usize,
    /// Sample size for plain mean-of-random-points starts.
    pub sample_m1: usize,
    /// Sample size for distance-checked starts.
    pub sample_m2: usize,
    /// Clusters below this size are never split.
    pub min_split_size: usize,
    /// "Sufficiently distant" threshold as a fraction of the split cluster's
    /// RMS radius.
    pub distance_factor: f64,
    /// Redraws allowed for a distance-checked start before it is accepted
    /// regardless.
    pub max_distance_retries: usize,
    /// Seed for all sampling; level `k` draws from substream `k`.
    pub seed: u64,
    /// Solver settings shared by every subproblem.
    pub solver: SolverConfig,
}

impl SplitConfig {
    pub fn new(k_max: usize) -> Self {
        Self {
            k_max,
            starts: 3,
            sample_m1: 10,
            sample_m2: 7,
            min_split_size: 5,
            distance_factor: 0.1,
            max_distance_retries: 20,
            seed: 0,
            solver: SolverConfig::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<(), SplitError> {
        if self.k_max < 1 {
            return Err(SplitError::InvalidConfig("k_max must be at least 1".into()));
        }
        if self.starts < 1 {
            return Err(SplitError::InvalidConfig(
                "starts must be at least 1".into(),
            ));
        }
        if self.sample_m1 < 2 || self.sample_m2 < 2 {
            return Err(SplitError::InvalidConfig(
                "sample sizes must be greater than 1".into(),
            ));
        }
        if self.min_split_size < 2 {
            return Err(SplitError::InvalidConfig(
                "min_split_size must be at least 2".into(),
            ));
        }
        if self.distance_factor.is_nan() || self.distance_factor < 0.0 {
            return Err(SplitError::InvalidConfig(
                "distance_factor must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// One solved level of the incremental run.
#[derive(Debug, Clone)]
pub struct LevelReport {
    pub k: usize,
    pub centers: CenterSet,
    /// Clustering objective of `centers` over the full dataset.
    pub objective: f64,
    /// Cumulative wall-clock seconds since the run started.
    pub elapsed_seconds: f64,
    /// Index of the cluster split to produce this level (absent for k = 1).
    pub split_cluster: Option<usize>,
    /// True when one side of the split ended up owning no points.
    pub degenerate_split: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunStatus {
    Complete,
    /// Splitting stopped early: every cluster was below the minimum split
    /// size when level `at_k` was attempted.
    NoSplittableCluster {
        at_k: usize,
    },
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub levels: Vec<LevelReport>,
    pub status: RunStatus,
}

impl RunReport {
    pub fn level(&self, k: usize) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.k == k)
    }
}

fn mean_of(data: &Dataset, rows: &[usize]) -> Vec<f64> {
    let n = data.n();
    let mut mean = vec![0.0; n];
    for &i in rows {
        for (m, v) in mean.iter_mut().zip(data.row(i)) {
            *m += v;
        }
    }
    let inv = 1.0 / rows.len() as f64;
    for m in &mut mean {
        *m *= inv;
    }
    mean
}

/// Solves the convex one-center problem, starting from the mean of
/// `sample_m1` randomly chosen points (all points when `m` is smaller).
pub fn solve_first_center(
    data: &Dataset,
    cfg: &SplitConfig,
    rng: &mut SplitMix64,
) -> Result<Vec<f64>, SplitError> {
    let sample = rng.sample_without_replacement(data.m(), cfg.sample_m1);
    let x0 = mean_of(data, &sample);
    let oracle = KClustering::new(data, 1);
    let res = minimize(&oracle, &x0, &cfg.solver)?;
    Ok(res.x_final)
}

/// Picks the cluster to split: the largest SSE among clusters of at least
/// `min_split_size` points; ties break to the smallest index.
pub fn select_split_cluster(
    sse_per_cluster: &[f64],
    sizes: &[usize],
    cfg: &SplitConfig,
) -> Result<usize, SplitError> {
    let mut best: Option<usize> = None;
    for (j, (&sse, &size)) in sse_per_cluster.iter().zip(sizes).enumerate() {
        if size < cfg.min_split_size {
            continue;
        }
        match best {
            Some(b) if sse_per_cluster[b] >= sse => {}
            _ => best = Some(j),
        }
    }
    best.ok_or(SplitError::NoSplittableCluster)
}

/// Candidate starting points for the starting-point auxiliary problem.
///
/// Kinds cycle in the order: (a) mean of `sample_m1` random member points,
/// (b) mean of `sample_m2` random member points that lies sufficiently far
/// from the split center (redrawn up to `max_distance_retries` times, then
/// accepted regardless), (c) the split center itself. With the default of
/// three starts each kind appears once.
pub fn generate_spa_starts(
    data: &Dataset,
    ctx: &SpaContext,
    cfg: &SplitConfig,
    rng: &mut SplitMix64,
) -> Vec<Vec<f64>> {
    let subset = ctx.subset();
    let threshold = cfg.distance_factor * ctx.rms_radius();
    let mut starts = Vec::with_capacity(cfg.starts);
    for i in 0..cfg.starts {
        let start = match i % 3 {
            0 => {
                let local = rng.sample_without_replacement(subset.len(), cfg.sample_m1);
                let rows: Vec<usize> = local.iter().map(|&e| subset[e]).collect();
                mean_of(data, &rows)
            }
            1 => {
                let mut candidate = Vec::new();
                for _ in 0..=cfg.max_distance_retries {
                    let local = rng.sample_without_replacement(subset.len(), cfg.sample_m2);
                    let rows: Vec<usize> = local.iter().map(|&e| subset[e]).collect();
                    candidate = mean_of(data, &rows);
                    let dist = crate::data::sq_dist(&candidate, ctx.center()).sqrt();
                    if dist > threshold {
                        break;
                    }
                }
                candidate
            }
            _ => ctx.center().to_vec(),
        };
        starts.push(start);
    }
    starts
}

/// Result of splitting one cluster into two centers.
#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    /// Two-center auxiliary objective at the returned centers.
    pub objective: f64,
    /// True when one of the centers owns no member point.
    pub degenerate: bool,
}

/// Splits `subset` around `split_center`: solves the starting-point
/// auxiliary problem from each candidate start, keeps the best solution
/// `ẑ`, then solves the two-center auxiliary problem from
/// `(split_center, ẑ)`.
pub fn split_cluster(
    data: &Dataset,
    subset: &[usize],
    split_center: &[f64],
    cfg: &SplitConfig,
    rng: &mut SplitMix64,
) -> Result<SplitOutcome, SplitError> {
    if subset.len() < 2 {
        return Err(SplitError::SubsetTooSmall { len: subset.len() });
    }
    let ctx = make_spa_context(data, subset, split_center)?;
    let starts = generate_spa_starts(data, &ctx, cfg, rng);

    let spa = SpaObjective::new(data, &ctx);
    let mut best_z: Option<(f64, Vec<f64>)> = None;
    for z0 in &starts {
        let res = minimize(&spa, z0, &cfg.solver)?;
        if best_z.as_ref().is_none_or(|(f, _)| res.f_final < *f) {
            best_z = Some((res.f_final, res.x_final));
        }
    }
    let (best_f, mut z_hat) = best_z.expect("at least one start");
    if best_f >= ctx.total_r() {
        // no start beat the split center (its value is the total radius and
        // its subgradient vanishes under the tie rule); seed the split with
        // the farthest member point instead
        let mut far = 0usize;
        for e in 1..subset.len() {
            if ctx.r()[e] > ctx.r()[far] {
                far = e;
            }
        }
        z_hat = data.row(subset[far]).to_vec();
    }

    let mut y0 = split_center.to_vec();
    y0.extend_from_slice(&z_hat);
    let aux = TwoAux::new(data, subset);
    let res = minimize(&aux, &y0, &cfg.solver)?;
    let n = data.n();
    let first = res.x_final[0..n].to_vec();
    let second = res.x_final[n..2 * n].to_vec();

    let mut owns_first = 0usize;
    let mut owns_second = 0usize;
    for &i in subset {
        let point = data.row(i);
        let d1 = crate::data::sq_dist(&first, point);
        let d2 = crate::data::sq_dist(&second, point);
        if d2 < d1 {
            owns_second += 1;
        } else {
            owns_first += 1;
        }
    }

    Ok(SplitOutcome {
        first,
        second,
        objective: res.f_final,
        degenerate: owns_first == 0 || owns_second == 0,
    })
}

/// Runs the full incremental algorithm up to `cfg.k_max` clusters.
///
/// Reported objectives are nonincreasing in `k`, each level's objective is
/// the clustering objective of its reported centers, and identical
/// `(dataset, cfg)` inputs give identical reports. When no cluster is
/// splittable the run stops early and reports the levels completed so far.
pub fn run(data: &Dataset, cfg: &SplitConfig) -> Result<RunReport, SplitError> {
    cfg.validate()?;
    if cfg.k_max > data.m() {
        return Err(SplitError::KMaxExceedsPoints {
            k_max: cfg.k_max,
            m: data.m(),
        });
    }

    let clock = Instant::now();
    let mut levels = Vec::with_capacity(cfg.k_max);

    let mut rng = SplitMix64::substream(cfg.seed, 1);
    let first = solve_first_center(data, cfg, &mut rng)?;
    let mut centers = CenterSet::new(first, data.n())?;
    let mut objective = eval_k_clustering(data, centers.coords())?;
    levels.push(LevelReport {
        k: 1,
        centers: centers.clone(),
        objective,
        elapsed_seconds: clock.elapsed().as_secs_f64(),
        split_cluster: None,
        degenerate_split: false,
    });

    for k in 2..=cfg.k_max {
        let mut rng = SplitMix64::substream(cfg.seed, k as u64);
        let assignment = assign(data, &centers)?;
        let sse = cluster_sse(data, &assignment, &centers)?;
        let c = match select_split_cluster(&sse, assignment.cluster_sizes(), cfg) {
            Ok(c) => c,
            Err(SplitError::NoSplittableCluster) => {
                return Ok(RunReport {
                    levels,
                    status: RunStatus::NoSplittableCluster { at_k: k },
                });
            }
            Err(e) => return Err(e),
        };
        let subset = assignment.members(c);
        let outcome = split_cluster(data, &subset, centers.row(c), cfg, &mut rng)?;

        let coords = if k == 2 {
            // the split of the single cluster already is the 2-center solution
            let mut coords = outcome.first.clone();
            coords.extend_from_slice(&outcome.second);
            coords
        } else {
            let n = data.n();
            let mut x0 = centers.coords().to_vec();
            x0[c * n..(c + 1) * n].copy_from_slice(&outcome.first);
            x0.extend_from_slice(&outcome.second);
            let oracle = KClustering::new(data, k);
            minimize(&oracle, &x0, &cfg.solver)?.x_final
        };
        centers = CenterSet::new(coords, data.n())?;
        objective = eval_k_clustering(data, centers.coords())?;
        levels.push(LevelReport {
            k,
            centers: centers.clone(),
            objective,
            elapsed_seconds: clock.elapsed().as_secs_f64(),
            split_cluster: Some(c),
            degenerate_split: outcome.degenerate,
        });
    }

    Ok(RunReport {
        levels,
        status: RunStatus::Complete,
    })
}
