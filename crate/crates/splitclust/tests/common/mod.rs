//! Shared helpers for the integration suites: reference datasets, an
//! exhaustive clustering oracle, structured random datasets, and a
//! finite-difference subgradient checker.

// each test target compiles its own copy and uses a subset
#![allow(dead_code)]

use std::path::PathBuf;

use splitclust::data::Dataset;
use splitclust::objective::Oracle;
use splitclust::rng::SplitMix64;

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

/// Global clustering optimum by exhaustive enumeration of all partitions of
/// the points into at most `k` blocks (restricted growth strings), scoring
/// each partition with its centroid centers. Independent of the solver path.
pub fn exhaustive_mssc(data: &Dataset, k: usize) -> f64 {
    let m = data.m();
    let n = data.n();
    let mut a = vec![0usize; m];
    let mut best = f64::INFINITY;
    loop {
        let blocks = a.iter().copied().max().unwrap() + 1;
        let mut sums = vec![0.0f64; blocks * n];
        let mut counts = vec![0usize; blocks];
        for (i, &b) in a.iter().enumerate() {
            counts[b] += 1;
            for (s, v) in sums[b * n..(b + 1) * n].iter_mut().zip(data.row(i)) {
                *s += v;
            }
        }
        let mut sse = 0.0;
        for (i, &b) in a.iter().enumerate() {
            for (&s, v) in sums[b * n..(b + 1) * n].iter().zip(data.row(i)) {
                let c = s / counts[b] as f64;
                let diff = c - v;
                sse += diff * diff;
            }
        }
        if sse < best {
            best = sse;
        }
        // next restricted growth string
        let mut i = m - 1;
        loop {
            if i == 0 {
                return best;
            }
            let prefix_max = a[..i].iter().copied().max().unwrap();
            if a[i] <= prefix_max && a[i] < k - 1 {
                a[i] += 1;
                for v in a[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Small random dataset with hierarchical cluster structure: two blobs close
/// together and a third far away, so both the 2- and 3-cluster optima are
/// unambiguous. 6 to 12 points, 1 or 2 features.
pub fn hierarchical_blobs(rng: &mut SplitMix64) -> Dataset {
    let n = 1 + rng.next_below(2);
    let sep_small = 4.0 + 2.0 * rng.next_f64();
    let sep_big = 12.0 + 6.0 * rng.next_f64();
    let unit = |rng: &mut SplitMix64| {
        let mut d: Vec<f64> = (0..n).map(|_| rng.next_normal_pair().0).collect();
        let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in d.iter_mut() {
            *v /= norm;
        }
        d
    };
    let dir1 = unit(rng);
    let dir2 = unit(rng);
    let offset: Vec<f64> = (0..n).map(|_| rng.next_f64() * 5.0).collect();
    let c1 = offset.clone();
    let c2: Vec<f64> = (0..n).map(|a| offset[a] + sep_small * dir1[a]).collect();
    let c3: Vec<f64> = (0..n)
        .map(|a| offset[a] + 0.5 * sep_small * dir1[a] + sep_big * dir2[a])
        .collect();
    let centers = [c1, c2, c3];
    let mut sizes = [2usize; 3];
    let m = 6 + rng.next_below(7);
    for _ in 0..m - 6 {
        sizes[rng.next_below(3)] += 1;
    }
    let mut pts = Vec::with_capacity(m * n);
    for (b, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            for &coord in centers[b].iter().take(n) {
                let (z, _) = rng.next_normal_pair();
                pts.push(coord + 0.6 * z);
            }
        }
    }
    Dataset::new(pts, m, n).unwrap()
}

/// Central-difference check of the oracle's subgradient at `x`, over
/// `n_dirs` random unit directions with step `h`. Returns the worst absolute
/// deviation scaled by `max(1, |f(x)|)`.
pub fn finite_difference_gap<O: Oracle>(
    oracle: &O,
    x: &[f64],
    h: f64,
    n_dirs: usize,
    rng: &mut SplitMix64,
) -> f64 {
    let (f, grad) = oracle.eval(x);
    let mut worst: f64 = 0.0;
    for _ in 0..n_dirs {
        let mut e: Vec<f64> = (0..x.len()).map(|_| rng.next_normal_pair().0).collect();
        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in e.iter_mut() {
            *v /= norm;
        }
        let xp: Vec<f64> = x.iter().zip(&e).map(|(a, b)| a + h * b).collect();
        let xm: Vec<f64> = x.iter().zip(&e).map(|(a, b)| a - h * b).collect();
        let (fp, _) = oracle.eval(&xp);
        let (fm, _) = oracle.eval(&xm);
        let fd = (fp - fm) / (2.0 * h);
        let analytic: f64 = grad.iter().zip(&e).map(|(g, d)| g * d).sum();
        worst = worst.max((analytic - fd).abs() / f.abs().max(1.0));
    }
    worst
}
