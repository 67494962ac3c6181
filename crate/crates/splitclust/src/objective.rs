//! Evaluation and subgradient oracles for the three nonsmooth clustering
//! objectives: the k-center clustering function, the starting-point auxiliary
//! (SPA) function used when a cluster is split, and the two-center auxiliary
//! function that performs the split.
//!
//! All three are sums over data points of pointwise minima of convex
//! quadratics, so they are locally Lipschitz and a Clarke subgradient is
//! obtained by picking one active branch per point. Branch choice at ties is
//! deterministic: the smallest center index wins, and the SPA radius term
//! wins over the candidate center. Sums over points use the deterministic
//! chunked reduction from [`crate::parallel`].

use thiserror::Error;

use crate::data::{sq_dist, Dataset};
use crate::parallel::map_chunks;

#[derive(Debug, Error)]
pub enum ObjectiveError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point index {index} out of range for {m} points")]
    IndexOutOfRange { index: usize, m: usize },
}

/// A nonsmooth objective: value and one Clarke subgradient at any point.
pub trait Oracle {
    fn dim(&self) -> usize;

    /// Writes a subgradient into `grad` (length [`Oracle::dim`]) and returns
    /// the objective value.
    fn eval_into(&self, x: &[f64], grad: &mut [f64]) -> f64;

    fn eval(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let mut grad = vec![0.0; self.dim()];
        let f = self.eval_into(x, &mut grad);
        (f, grad)
    }
}

/// Core of the clustering objectives: for each selected point take the
/// squared distance to its nearest of `k` centers (smallest index on ties),
/// optionally accumulating `2(x^j - a)` into the winning center's gradient
/// block.
fn min_dist_reduce(
    data: &Dataset,
    subset: Option<&[usize]>,
    centers: &[f64],
    k: usize,
    mut grad: Option<&mut [f64]>,
) -> f64 {
    let n = data.n();
    debug_assert_eq!(centers.len(), k * n);
    let len = subset.map_or(data.m(), |s| s.len());
    let parts = map_chunks(len, |_, range| {
        let mut f = 0.0f64;
        let mut g = if grad.is_some() {
            vec![0.0f64; k * n]
        } else {
            Vec::new()
        };
        for e in range {
            let i = subset.map_or(e, |s| s[e]);
            let point = data.row(i);
            let mut best = 0usize;
            let mut best_d = sq_dist(&centers[0..n], point);
            for j in 1..k {
                let d = sq_dist(&centers[j * n..(j + 1) * n], point);
                if d < best_d {
                    best = j;
                    best_d = d;
                }
            }
            f += best_d;
            if !g.is_empty() {
                let block = &mut g[best * n..(best + 1) * n];
                let center = &centers[best * n..(best + 1) * n];
                for ((gv, cv), pv) in block.iter_mut().zip(center).zip(point) {
                    *gv += 2.0 * (cv - pv);
                }
            }
        }
        (f, g)
    });

    let mut f = 0.0f64;
    for (fp, gp) in parts {
        f += fp;
        if let Some(g) = grad.as_deref_mut() {
            for (acc, v) in g.iter_mut().zip(gp) {
                *acc += v;
            }
        }
    }
    f
}

/// The k-center clustering objective over a full dataset. Centers that own
/// no points receive a zero subgradient block.
pub struct KClustering<'a> {
    data: &'a Dataset,
    k: usize,
}

impl<'a> KClustering<'a> {
    pub fn new(data: &'a Dataset, k: usize) -> Self {
        assert!(k >= 1);
        Self { data, k }
    }
}

impl Oracle for KClustering<'_> {
    fn dim(&self) -> usize {
        self.k * self.data.n()
    }

    fn eval_into(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        assert_eq!(x.len(), self.dim());
        assert_eq!(grad.len(), self.dim());
        grad.fill(0.0);
        min_dist_reduce(self.data, None, x, self.k, Some(grad))
    }
}

/// Precomputed state for one cluster split: the member indices, the center
/// of the cluster being split, and each member's squared distance `r` to
/// that center. `r` is computed once and reused across all SPA evaluations
/// of the split.
#[derive(Debug, Clone)]
pub struct SpaContext {
    subset: Vec<usize>,
    center: Vec<f64>,
    r: Vec<f64>,
    total_r: f64,
}

impl SpaContext {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// Sum of the radii, reduced in the same chunk order as the SPA
    /// objective; equals the SPA value at the split center.
    pub fn total_r(&self) -> f64 {
        self.total_r
    }

    /// Root-mean-square radius of the cluster being split.
    pub fn rms_radius(&self) -> f64 {
        (self.total_r / self.subset.len() as f64).sqrt()
    }
}

/// Builds the split context for `subset` against `split_center`.
pub fn make_spa_context(
    data: &Dataset,
    subset: &[usize],
    split_center: &[f64],
) -> Result<SpaContext, ObjectiveError> {
    if subset.is_empty() {
        return Err(ObjectiveError::EmptySubset);
    }
    if split_center.len() != data.n() {
        return Err(ObjectiveError::DimensionMismatch {
            left: split_center.len(),
            right: data.n(),
        });
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= data.m()) {
        return Err(ObjectiveError::IndexOutOfRange {
            index: bad,
            m: data.m(),
        });
    }
    let r: Vec<f64> = subset
        .iter()
        .map(|&i| sq_dist(split_center, data.row(i)))
        .collect();
    let total_r = map_chunks(r.len(), |_, range| range.map(|e| r[e]).sum::<f64>())
        .into_iter()
        .sum();
    Ok(SpaContext {
        subset: subset.to_vec(),
        center: split_center.to_vec(),
        r,
        total_r,
    })
}

/// The starting-point auxiliary objective: for each member point the smaller
/// of its stored radius and its squared distance to the candidate center
/// `z`. At ties the radius branch wins, so the point contributes nothing to
/// the subgradient.
pub struct SpaObjective<'a> {
    data: &'a Dataset,
    ctx: &'a SpaContext,
}

impl<'a> SpaObjective<'a> {
    pub fn new(data: &'a Dataset, ctx: &'a SpaContext) -> Self {
        Self { data, ctx }
    }

    fn reduce(&self, z: &[f64], mut grad: Option<&mut [f64]>) -> f64 {
        let ctx = self.ctx;
        let n = self.data.n();
        let parts = map_chunks(ctx.subset.len(), |_, range| {
            let mut f = 0.0f64;
            let mut g = if grad.is_some() {
                vec![0.0f64; n]
            } else {
                Vec::new()
            };
            for e in range {
                let point = self.data.row(ctx.subset[e]);
                let d = sq_dist(z, point);
                let r = ctx.r[e];
                if d < r {
                    f += d;
                    if !g.is_empty() {
                        for ((gv, zv), pv) in g.iter_mut().zip(z).zip(point) {
                            *gv += 2.0 * (zv - pv);
                        }
                    }
                } else {
                    f += r;
                }
            }
            (f, g)
        });
        let mut f = 0.0f64;
        for (fp, gp) in parts {
            f += fp;
            if let Some(g) = grad.as_deref_mut() {
                for (acc, v) in g.iter_mut().zip(gp) {
                    *acc += v;
                }
            }
        }
        f
    }
}

impl Oracle for SpaObjective<'_> {
    fn dim(&self) -> usize {
        self.data.n()
    }

    fn eval_into(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        assert_eq!(x.len(), self.dim());
        grad.fill(0.0);
        self.reduce(x, Some(grad))
    }
}

/// The two-center auxiliary objective over a cluster's member points; the
/// decision vector is `(y¹, y²)` flattened to length `2n`. Ties assign the
/// point to `y¹`.
pub struct TwoAux<'a> {
    data: &'a Dataset,
    subset: &'a [usize],
}

impl<'a> TwoAux<'a> {
    pub fn new(data: &'a Dataset, subset: &'a [usize]) -> Self {
        assert!(!subset.is_empty());
        Self { data, subset }
    }
}

impl Oracle for TwoAux<'_> {
    fn dim(&self) -> usize {
        2 * self.data.n()
    }

    fn eval_into(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        assert_eq!(x.len(), self.dim());
        grad.fill(0.0);
        min_dist_reduce(self.data, Some(self.subset), x, 2, Some(grad))
    }
}

fn check_k_vector(data: &Dataset, x: &[f64]) -> Result<usize, ObjectiveError> {
    let n = data.n();
    if x.is_empty() || !x.len().is_multiple_of(n) {
        return Err(ObjectiveError::DimensionMismatch {
            left: x.len(),
            right: n,
        });
    }
    Ok(x.len() / n)
}

/// Value of the k-clustering objective at a flattened center vector `x`;
/// `k` is inferred from the vector length.
pub fn eval_k_clustering(data: &Dataset, x: &[f64]) -> Result<f64, ObjectiveError> {
    let k = check_k_vector(data, x)?;
    Ok(min_dist_reduce(data, None, x, k, None))
}

/// One Clarke subgradient of the k-clustering objective at `x`.
pub fn subgrad_k_clustering(data: &Dataset, x: &[f64]) -> Result<Vec<f64>, ObjectiveError> {
    let k = check_k_vector(data, x)?;
    let mut grad = vec![0.0; x.len()];
    min_dist_reduce(data, None, x, k, Some(&mut grad));
    Ok(grad)
}

/// Value of the SPA objective at candidate center `z`.
pub fn eval_spa(ctx: &SpaContext, data: &Dataset, z: &[f64]) -> Result<f64, ObjectiveError> {
    if z.len() != data.n() {
        return Err(ObjectiveError::DimensionMismatch {
            left: z.len(),
            right: data.n(),
        });
    }
    Ok(SpaObjective::new(data, ctx).reduce(z, None))
}

/// One Clarke subgradient of the SPA objective at `z`.
pub fn subgrad_spa(
    ctx: &SpaContext,
    data: &Dataset,
    z: &[f64],
) -> Result<Vec<f64>, ObjectiveError> {
    if z.len() != data.n() {
        return Err(ObjectiveError::DimensionMismatch {
            left: z.len(),
            right: data.n(),
        });
    }
    let mut grad = vec![0.0; data.n()];
    SpaObjective::new(data, ctx).reduce(z, Some(&mut grad));
    Ok(grad)
}

/// Value of the two-center auxiliary objective at `y = (y¹, y²)`.
pub fn eval_two_aux(data: &Dataset, subset: &[usize], y: &[f64]) -> Result<f64, ObjectiveError> {
    if subset.is_empty() {
        return Err(ObjectiveError::EmptySubset);
    }
    if y.len() != 2 * data.n() {
        return Err(ObjectiveError::DimensionMismatch {
            left: y.len(),
            right: 2 * data.n(),
        });
    }
    Ok(min_dist_reduce(data, Some(subset), y, 2, None))
}

/// One Clarke subgradient of the two-center auxiliary objective at `y`.
pub fn subgrad_two_aux(
    data: &Dataset,
    subset: &[usize],
    y: &[f64],
) -> Result<Vec<f64>, ObjectiveError> {
    if subset.is_empty() {
        return Err(ObjectiveError::EmptySubset);
    }
    if y.len() != 2 * data.n() {
        return Err(ObjectiveError::DimensionMismatch {
            left: y.len(),
            right: 2 * data.n(),
        });
    }
    let mut grad = vec![0.0; 2 * data.n()];
    min_dist_reduce(data, Some(subset), y, 2, Some(&mut grad));
    Ok(grad)
}
