//! Limited memory bundle method for nonsmooth, nonconvex, unconstrained
//! minimization.
//!
//! The solver needs only an [`Oracle`]: the objective value and one Clarke
//! subgradient at any point. Each iteration builds a search direction by
//! applying a limited-memory inverse-metric operator to an *aggregate*
//! subgradient, then runs a backtracking line search that ends in one of two
//! ways:
//!
//! - **serious step** — sufficient decrease holds; the iterate moves and the
//!   aggregate resets to the new subgradient;
//! - **null step** — no acceptable decrease, but the trial point contributes
//!   a new subgradient; the aggregate is re-mixed from the current
//!   subgradient, the trial subgradient, and the previous aggregate by a
//!   closed-form quadratic program over the 2-simplex, weighted by the
//!   subgradient locality measure.
//!
//! The metric operator is held matrix-free as a FIFO store of correction
//! pairs `(s, u)` = (step, subgradient difference). After a serious step it
//! is applied with the L-BFGS two-loop recursion (Nocedal & Wright, ch. 7);
//! after null steps with a sequence of guarded SR1 rank-one corrections,
//! which remain informative under the negative curvature a nonconvex
//! objective exposes. Pairs failing the positive-curvature admission test
//! are never stored.
//!
//! Iteration stops when the stationarity surrogate `w = ξ̃ᵀDξ̃ + 2β̃` falls
//! below the configured tolerance, or an iteration/null-step/line-search
//! limit is hit. Every serious step strictly decreases the objective, so the
//! returned value never exceeds the value at the starting point.

use std::collections::VecDeque;

use thiserror::Error;

use crate::objective::Oracle;

/// Relative positive-curvature threshold for admitting a correction pair.
const CURVATURE_TOL: f64 = 1e-12;
/// Relative denominator threshold below which an SR1 correction is skipped.
const SR1_TOL: f64 = 1e-8;
/// Trial steps per line search before giving up.
const MAX_LS_TRIALS: usize = 30;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Correction pairs kept for the limited-memory metric.
    pub max_corrections: usize,
    /// Stopping tolerance on the stationarity measure `w`.
    pub stop_tol: f64,
    /// Iteration cap.
    pub max_iters: usize,
    /// Cap on consecutive null steps.
    pub max_null_steps: usize,
    /// Sufficient-decrease parameter in (0, 0.5).
    pub ls_c1: f64,
    /// Null-step acceptance parameter in (ls_c1, 1).
    pub ls_c2: f64,
    /// First trial step of every line search.
    pub initial_step: f64,
    /// Weight of the squared step length in the locality measure.
    pub dist_measure_weight: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_corrections: 7,
            stop_tol: 1e-5,
            max_iters: 500,
            max_null_steps: 50,
            ls_c1: 1e-4,
            ls_c2: 0.25,
            initial_step: 1.0,
            dist_measure_weight: 0.5,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<(), SolverError> {
        if self.max_corrections < 1 {
            return Err(SolverError::InvalidConfig(
                "max_corrections must be >= 1".into(),
            ));
        }
        if self.stop_tol.is_nan() || self.stop_tol <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "stop_tol must be positive".into(),
            ));
        }
        if self.ls_c1.is_nan() || self.ls_c1 <= 0.0 || self.ls_c1 >= 0.5 {
            return Err(SolverError::InvalidConfig(
                "ls_c1 must lie in (0, 0.5)".into(),
            ));
        }
        if self.ls_c2.is_nan() || self.ls_c2 <= self.ls_c1 || self.ls_c2 >= 1.0 {
            return Err(SolverError::InvalidConfig(
                "ls_c2 must lie in (ls_c1, 1)".into(),
            ));
        }
        if self.initial_step.is_nan() || self.initial_step <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "initial_step must be positive".into(),
            ));
        }
        if self.dist_measure_weight.is_nan() || self.dist_measure_weight < 0.0 {
            return Err(SolverError::InvalidConfig(
                "dist_measure_weight must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Stationarity measure reached `stop_tol`.
    Converged,
    /// Iteration cap reached.
    IterLimit,
    /// Too many consecutive null steps.
    NullStepLimit,
    /// No acceptable trial step; the best iterate so far is returned.
    LineSearchFailure,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub x_final: Vec<f64>,
    pub f_final: f64,
    pub n_iters: usize,
    pub n_oracle_calls: usize,
    pub status: SolveStatus,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("oracle returned a non-finite value at the starting point")]
    NonFiniteOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Last step was serious: two-loop L-BFGS application.
    Bfgs,
    /// Last step was null: guarded SR1 application.
    Sr1,
}

struct Pair {
    s: Vec<f64>,
    u: Vec<f64>,
    su: f64,
    uu: f64,
}

/// FIFO store of admitted correction pairs plus the aggregate subgradient
/// state of the bundle.
struct BundleState {
    pairs: VecDeque<Pair>,
    cap: usize,
    mode: Mode,
    xi_agg: Vec<f64>,
    beta_agg: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl BundleState {
    fn new(cap: usize, xi0: Vec<f64>) -> Self {
        Self {
            pairs: VecDeque::with_capacity(cap),
            cap,
            mode: Mode::Bfgs,
            xi_agg: xi0,
            beta_agg: 0.0,
        }
    }

    /// Admits `(s, u)` if it passes the positive-curvature test
    /// `sᵀu > 1e-12·‖s‖‖u‖`; the oldest pair is evicted at capacity.
    fn push_pair(&mut self, s: Vec<f64>, u: Vec<f64>) -> bool {
        let su = dot(&s, &u);
        let uu = dot(&u, &u);
        if !su.is_finite() || !uu.is_finite() || su <= CURVATURE_TOL * norm(&s) * norm(&u) {
            return false;
        }
        if self.pairs.len() == self.cap {
            self.pairs.pop_front();
        }
        self.pairs.push_back(Pair { s, u, su, uu });
        true
    }

    /// Scaling of the base metric: `sᵀu / uᵀu` of the newest pair.
    fn gamma(&self) -> f64 {
        match self.pairs.back() {
            Some(p) if p.uu > 0.0 => p.su / p.uu,
            _ => 1.0,
        }
    }

    /// `D·v` for the current mode's limited-memory operator.
    fn apply_metric(&self, v: &[f64]) -> Vec<f64> {
        if self.pairs.is_empty() {
            return v.to_vec();
        }
        match self.mode {
            Mode::Bfgs => self.apply_bfgs(v),
            Mode::Sr1 => self.apply_sr1(v),
        }
    }

    /// Two-loop recursion over the stored pairs with base metric `γI`.
    fn apply_bfgs(&self, v: &[f64]) -> Vec<f64> {
        let m = self.pairs.len();
        let mut q = v.to_vec();
        let mut alphas = vec![0.0; m];
        for (i, p) in self.pairs.iter().enumerate().rev() {
            let alpha = dot(&p.s, &q) / p.su;
            alphas[i] = alpha;
            for (qv, uv) in q.iter_mut().zip(&p.u) {
                *qv -= alpha * uv;
            }
        }
        let gamma = self.gamma();
        let mut r: Vec<f64> = q.iter().map(|&x| gamma * x).collect();
        for (i, p) in self.pairs.iter().enumerate() {
            let beta = dot(&p.u, &r) / p.su;
            let coeff = alphas[i] - beta;
            for (rv, sv) in r.iter_mut().zip(&p.s) {
                *rv += coeff * sv;
            }
        }
        r
    }

    /// Sequential inverse SR1 corrections on top of `γI`: for each stored
    /// pair, `D ← D + wwᵀ/(uᵀw)` with `w = s − Du`. A correction whose
    /// denominator fails `|uᵀw| > 1e-8·‖u‖‖w‖` is skipped and the metric
    /// stays unchanged for that pair.
    fn apply_sr1(&self, v: &[f64]) -> Vec<f64> {
        let gamma = self.gamma();
        let mut kept: Vec<(Vec<f64>, f64)> = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            let mut du: Vec<f64> = p.u.iter().map(|&x| gamma * x).collect();
            for (w, den) in &kept {
                let c = dot(w, &p.u) / den;
                for (dv, wv) in du.iter_mut().zip(w) {
                    *dv += c * wv;
                }
            }
            let w: Vec<f64> = p.s.iter().zip(&du).map(|(sv, dv)| sv - dv).collect();
            let den = dot(&p.u, &w);
            if den.abs() > SR1_TOL * norm(&p.u) * norm(&w) && den.is_finite() {
                kept.push((w, den));
            }
        }
        let mut out: Vec<f64> = v.iter().map(|&x| gamma * x).collect();
        for (w, den) in &kept {
            let c = dot(w, v) / den;
            for (ov, wv) in out.iter_mut().zip(w) {
                *ov += c * wv;
            }
        }
        out
    }

    /// Search direction `d = −D·ξ̃`. An empty store or a non-descent
    /// product falls back to the steepest descent direction on `ξ̃`.
    fn direction(&self) -> Vec<f64> {
        if self.pairs.is_empty() {
            return self.xi_agg.iter().map(|&g| -g).collect();
        }
        let dxi = self.apply_metric(&self.xi_agg);
        let mut d: Vec<f64> = dxi.iter().map(|&g| -g).collect();
        let slope = dot(&d, &self.xi_agg);
        if (slope.is_nan() || slope >= 0.0) && dot(&self.xi_agg, &self.xi_agg) > 0.0 {
            d = self.xi_agg.iter().map(|&g| -g).collect();
        }
        d
    }

    /// Re-mixes the aggregate from the subgradient at the iterate, the trial
    /// subgradient (with locality `beta_new`), and the previous aggregate,
    /// minimizing `pᵀDp + 2β` over the 2-simplex.
    fn aggregate(&mut self, xi_x: &[f64], xi_new: &[f64], beta_new: f64) {
        let g = [xi_x, xi_new, self.xi_agg.as_slice()];
        let dg: Vec<Vec<f64>> = g.iter().map(|v| self.apply_metric(v)).collect();
        let mut q = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let val = 0.5 * (dot(g[i], &dg[j]) + dot(g[j], &dg[i]));
                q[i][j] = val;
                q[j][i] = val;
            }
        }
        let c = [0.0, 2.0 * beta_new, 2.0 * self.beta_agg];
        let lambda = simplex3_argmin(&q, &c);
        let mut xi = vec![0.0; self.xi_agg.len()];
        for (i, gi) in g.iter().enumerate() {
            for (xv, gv) in xi.iter_mut().zip(*gi) {
                *xv += lambda[i] * gv;
            }
        }
        self.beta_agg = (lambda[1] * beta_new + lambda[2] * self.beta_agg).max(0.0);
        self.xi_agg = xi;
    }
}

/// Minimizer of `φ(λ) = λᵀQλ + cᵀλ` over the probability simplex in R³,
/// found in closed form: vertices, edge minimizers, and the interior
/// stationary point are enumerated and the best evaluated candidate wins.
fn simplex3_argmin(q: &[[f64; 3]; 3], c: &[f64; 3]) -> [f64; 3] {
    let phi = |l: &[f64; 3]| -> f64 {
        let mut v = 0.0;
        for i in 0..3 {
            v += c[i] * l[i];
            for j in 0..3 {
                v += l[i] * q[i][j] * l[j];
            }
        }
        v
    };

    let mut candidates: Vec<[f64; 3]> = vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    // edge (i, j): λ = (1−t)·e_i + t·e_j
    for &(i, j) in &[(0usize, 1usize), (0, 2), (1, 2)] {
        let a2 = 2.0 * (q[i][i] - 2.0 * q[i][j] + q[j][j]);
        if a2.abs() > 0.0 {
            let t = (2.0 * (q[i][i] - q[i][j]) + c[i] - c[j]) / a2;
            if t > 0.0 && t < 1.0 && t.is_finite() {
                let mut l = [0.0; 3];
                l[i] = 1.0 - t;
                l[j] = t;
                candidates.push(l);
            }
        }
    }

    // interior stationary point: ∇φ equal across coordinates with
    // λ₂ = 1 − λ₀ − λ₁
    let m00 = 2.0 * (q[0][0] - q[0][2] - q[2][0] + q[2][2]);
    let m01 = 2.0 * (q[0][1] - q[0][2] - q[2][1] + q[2][2]);
    let m10 = 2.0 * (q[1][0] - q[1][2] - q[2][0] + q[2][2]);
    let m11 = 2.0 * (q[1][1] - q[1][2] - q[2][1] + q[2][2]);
    let r0 = -(2.0 * (q[0][2] - q[2][2]) + c[0] - c[2]);
    let r1 = -(2.0 * (q[1][2] - q[2][2]) + c[1] - c[2]);
    let det = m00 * m11 - m01 * m10;
    if det.abs() > 1e-300 {
        let a = (r0 * m11 - r1 * m01) / det;
        let b = (m00 * r1 - m10 * r0) / det;
        if a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0 && a + b <= 1.0 {
            candidates.push([a, b, 1.0 - a - b]);
        }
    }

    let mut best = candidates[0];
    let mut best_phi = phi(&best);
    for l in &candidates[1..] {
        let v = phi(l);
        if v < best_phi {
            best_phi = v;
            best = *l;
        }
    }
    best
}

enum StepOutcome {
    Serious {
        y: Vec<f64>,
        f_y: f64,
        xi_y: Vec<f64>,
    },
    Null {
        y: Vec<f64>,
        xi_y: Vec<f64>,
        beta: f64,
    },
    Failure,
}

/// Backtracking line search along `d` from `x`. Bisects the trial step up to
/// 30 times; a non-finite oracle value halves the step and retries. Returns
/// `Serious` on sufficient decrease, `Null` once the trial subgradient rises
/// enough to cut the direction, `Failure` if no trial is acceptable.
#[allow(clippy::too_many_arguments)]
fn line_search<O: Oracle + ?Sized>(
    oracle: &O,
    x: &[f64],
    f_x: f64,
    d: &[f64],
    v: f64,
    cfg: &SolverConfig,
    n_calls: &mut usize,
) -> StepOutcome {
    let d_norm_sq = dot(d, d);
    let mut t = cfg.initial_step;
    let mut grad = vec![0.0; x.len()];
    let mut evals = 0usize;
    while evals < MAX_LS_TRIALS {
        let y: Vec<f64> = x.iter().zip(d).map(|(xv, dv)| xv + t * dv).collect();
        let f_y = oracle.eval_into(&y, &mut grad);
        *n_calls += 1;
        evals += 1;
        let finite = f_y.is_finite() && grad.iter().all(|g| g.is_finite());
        if !finite {
            t *= 0.5;
            continue;
        }
        // serious steps must strictly decrease f; at machine-precision
        // stationarity the Armijo bound rounds to f_x and no progress is
        // representable
        if f_y < f_x && f_y <= f_x + cfg.ls_c1 * t * v {
            // pull the accepted point toward the line minimum: an accepted
            // step far past it changes which stationary point the descent
            // settles in
            let mut best_t = t;
            let mut best_f = f_y;
            let mut best_y = y;
            let mut best_grad = grad.clone();
            while evals < MAX_LS_TRIALS {
                let denom = 2.0 * (best_f - f_x - best_t * v);
                if denom <= 0.0 {
                    break;
                }
                let t_star = -v * best_t * best_t / denom;
                if !(t_star > 0.0 && t_star < 0.95 * best_t) {
                    break;
                }
                let y_star: Vec<f64> = x.iter().zip(d).map(|(xv, dv)| xv + t_star * dv).collect();
                let f_star = oracle.eval_into(&y_star, &mut grad);
                *n_calls += 1;
                evals += 1;
                let ok = f_star.is_finite() && grad.iter().all(|g| g.is_finite());
                if !ok || f_star >= best_f {
                    break;
                }
                best_t = t_star;
                best_f = f_star;
                best_y = y_star;
                best_grad.copy_from_slice(&grad);
            }
            return StepOutcome::Serious {
                y: best_y,
                f_y: best_f,
                xi_y: best_grad,
            };
        }
        let dir_deriv = dot(&grad, d);
        let lin_err = (f_x - f_y + t * dir_deriv).abs();
        let beta = lin_err.max(cfg.dist_measure_weight * (t * t * d_norm_sq));
        // null step only once the trial subgradient cuts the direction net
        // of its locality: far overshoots carry a large β and keep shrinking
        if dir_deriv - beta >= cfg.ls_c2 * v {
            return StepOutcome::Null {
                y,
                xi_y: grad.clone(),
                beta,
            };
        }
        // safeguarded quadratic interpolation on φ(t) = f(x + t·d)
        let denom = 2.0 * (f_y - f_x - t * v);
        let t_star = if denom > 0.0 {
            -v * t * t / denom
        } else {
            0.5 * t
        };
        t = t_star.clamp(0.1 * t, 0.5 * t);
    }
    StepOutcome::Failure
}

/// Minimizes `oracle` from `x0`.
///
/// The result's `f_final` never exceeds the objective at `x0`, whatever the
/// termination status. Identical `(oracle, x0, cfg)` inputs produce an
/// identical result.
pub fn minimize<O: Oracle + ?Sized>(
    oracle: &O,
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<SolverResult, SolverError> {
    cfg.validate()?;
    assert_eq!(x0.len(), oracle.dim());

    let mut n_calls = 0usize;
    let mut xi_x = vec![0.0; x0.len()];
    let f0 = oracle.eval_into(x0, &mut xi_x);
    n_calls += 1;
    if !f0.is_finite() || xi_x.iter().any(|g| !g.is_finite()) {
        return Err(SolverError::NonFiniteOracle);
    }

    let mut x = x0.to_vec();
    let mut f = f0;
    let mut state = BundleState::new(cfg.max_corrections, xi_x.clone());
    let mut null_run = 0usize;
    let mut status = SolveStatus::IterLimit;
    let mut n_iters = 0usize;

    for _ in 0..cfg.max_iters {
        // exact-zero aggregate with leftover locality: restart from the
        // subgradient at the iterate
        if state.xi_agg.iter().all(|&g| g == 0.0) && state.beta_agg > 0.0 {
            state.xi_agg = xi_x.clone();
            state.beta_agg = 0.0;
        }

        let d = state.direction();
        let v = dot(&d, &state.xi_agg);
        let w = -v + 2.0 * state.beta_agg;
        if w <= cfg.stop_tol {
            status = SolveStatus::Converged;
            break;
        }
        n_iters += 1;

        match line_search(oracle, &x, f, &d, v, cfg, &mut n_calls) {
            StepOutcome::Serious { y, f_y, xi_y } => {
                let s: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
                let u: Vec<f64> = xi_y.iter().zip(&xi_x).map(|(a, b)| a - b).collect();
                state.push_pair(s, u);
                x = y;
                f = f_y;
                xi_x = xi_y.clone();
                state.xi_agg = xi_y;
                state.beta_agg = 0.0;
                state.mode = Mode::Bfgs;
                null_run = 0;
            }
            StepOutcome::Null { y, xi_y, beta } => {
                state.aggregate(&xi_x, &xi_y, beta);
                let s: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
                let u: Vec<f64> = xi_y.iter().zip(&xi_x).map(|(a, b)| a - b).collect();
                state.push_pair(s, u);
                state.mode = Mode::Sr1;
                null_run += 1;
                if null_run > cfg.max_null_steps {
                    status = SolveStatus::NullStepLimit;
                    break;
                }
            }
            StepOutcome::Failure => {
                status = SolveStatus::LineSearchFailure;
                break;
            }
        }
    }

    Ok(SolverResult {
        x_final: x,
        f_final: f,
        n_iters,
        n_oracle_calls: n_calls,
        status,
    })
}
